#pragma once

#include "qpvi/poly.hpp"
#include "qpvi/qseries.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace qpvi {

struct SurfaceParams {
  Complex kappa1, kappa2, theta1, theta2;
  std::array<Complex, 4> c;
  Real q;

  Complex sigma1() const;
  Complex sigma3() const;
  // |kappa1 kappa2 c1 c2 c3 c4 - theta1 theta2| / |theta1 theta2|
  Real constraint_residual() const;
  // Throws ConstraintError if the residual exceeds tol or a parameter vanishes.
  void check(const Real& tol) const;
  SurfaceParams stepped() const;  // (q kappa1, kappa2, q theta1, theta2)
};

// A point of P1 x P1 in the (y, xi) chart; infinite coordinates are flagged.
struct SurfaceCoords {
  Complex y, xi;
  bool y_inf = false, xi_inf = false;
};

// kappa1 = b q^{n+1}, kappa2 = a q, theta1 = conj(b) q^n, theta2 = conj(a),
// c = (conj(a)/q, 1/b, conj(b)/q, 1/a).
SurfaceParams params_from_weight(const QWeightParams& p, int n);

// Conjugates A by a constant diagonal matrix so that e12 is monic.
MatPoly2 gauge_normalize(const MatPoly2& A);

struct ExtractedCoords {
  SurfaceCoords coords;
  Real consistency;  // relative gap between the two xi expressions
};

// y = root of e12, xi = (y-c1)(y-c2)/e11(y), checked against e22(y)/(k1 k2 (y-c3)(y-c4)).
ExtractedCoords extract_coords(const MatPoly2& A, const SurfaceParams& sp, const Real& tol = Real(0));

// Builds the Jimbo-Sakai matrix with e12 = z - y and the given coordinates.
// Free data: the e11 linear coefficient is fixed through e11(y) = (y-c1)(y-c2)/xi.
MatPoly2 js_matrix(const SurfaceCoords& c, const SurfaceParams& sp);

struct StepResult {
  SurfaceCoords coords;
  SurfaceParams params;
};

StepResult phi_step(const SurfaceCoords& c, const SurfaceParams& sp);

// xi-tilde exactly as the displayed formula gives it (q times the value phi_step uses).
Complex xitilde_as_printed(const SurfaceCoords& c, const SurfaceParams& sp);

struct MatrixStepResult {
  MatPoly2 A;
  Real division_residual;  // relative size of the terms dropped: z^0 before dividing by z, and degrees above 2 (above 1 for e12)
  Complex beta;
  Complex delta;
};

MatrixStepResult matrix_step(const MatPoly2& A, const SurfaceParams& sp);

struct MatrixStepChecks {
  Real det_ratio;        // max coefficient of det A~ - q det A, relative
  Real lead_spectrum;    // leading matrix eigenvalues vs {q kappa1, kappa2}
  Real const_spectrum;   // constant matrix eigenvalues vs {q theta1, theta2}
  Real w_ytilde;         // |w y~ - q| with e12 = w z + const
};

MatrixStepChecks check_matrix_step(const MatPoly2& A, const MatrixStepResult& r, const SurfaceParams& sp);

struct FactorizationReport {
  std::array<Real, 4> residual;  // i = 1..4, relative coefficient residuals
  Real printed_i3;               // the displayed i = 3 product, without the factor q
  Real printed_expanded_i1;      // the displayed expanded form for i = 1
};

FactorizationReport factorization_check(const SurfaceParams& sp, const Complex& y);

struct BlownUpPoint {
  std::string name;
  SurfaceCoords at;
};

std::array<BlownUpPoint, 8> blown_up_points(const SurfaceParams& sp);

nlohmann::json to_json(const SurfaceParams& sp);
nlohmann::json to_json(const SurfaceCoords& c);

}  // namespace qpvi
