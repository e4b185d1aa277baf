#pragma once

#include "qpvi/numeric.hpp"
#include "qpvi/poly.hpp"

#include <json.hpp>

namespace qpvi {

struct QWeightParams {
  Complex a;
  Complex b;
  Real q;
  unsigned prec = kDefaultPrecisionBits;
  Real trunc_tol;  // zero means 2^-(prec+16)

  // Throws ConfigError on |a| >= 1, |b| >= 1, q outside (0,1), prec < 53.
  void validate() const;
  Real truncation_tol() const;
  // Copy with every Real rounded to the working precision.
  QWeightParams promoted() const;
};

struct MomentTable {
  int K = 0;
  std::vector<Complex> c;  // c[k + K] holds c_k
  bool c0_normalized = false;
  Complex mass;            // unnormalized c_0
  Real quadrature_error;   // max change of any c_k between N and 2N nodes
  int nodes = 0;

  const Complex& at(int k) const { return c.at(k + K); }
};

// (z; q)_oo truncated at the first M with |z| q^M < tol, times exp(-z q^(M+1)/(1-q)).
Complex qpoch_inf(const Complex& z, const Real& q, const Real& tol);

Complex weight_eval(const QWeightParams& p, const Complex& z);
Complex rho_eval(const QWeightParams& p, const Complex& z);

struct VWPolys {
  CPoly V;
  CPoly W;
};

// V = (qz - conj a)(bz - 1), W = (qz - conj b)(az - 1); w(qz) W(z) = V(z) w(z).
VWPolys vw_polys(const QWeightParams& p);

// Trapezoidal moments c_{-K..K}. nodes == 0 picks a node count from the
// analyticity annulus of w. Throws PrecisionError if doubling the nodes moves
// any moment by more than tol (tol == 0 means 2^-(prec-24)).
MomentTable moments(const QWeightParams& p, int K, int nodes = 0, bool normalize = true,
                    const Real& tol = Real(0));

struct CaratheodoryValue {
  Complex value;
  Real tail_bound;
};

CaratheodoryValue caratheodory_eval(const QWeightParams& p, const MomentTable& table,
                                    const Complex& z, const Real& tol = Real(0));

// f_+(e^{i theta}) = (b e^{i theta}; q)_oo / (a e^{i theta}; q)_oo
Complex fplus_eval(const QWeightParams& p, const Real& theta);

struct CaratheodoryFit {
  CPoly U;                  // degree <= 2
  Real max_residual;        // |W F(q.) - V F - U| / max(|W F(q.)|, 1) over the check points
  std::vector<Complex> fit_points;
};

// Fits U at 3 points of modulus r and checks W F(q.) = V F + U at `checks` further points.
CaratheodoryFit fit_caratheodory_U(const QWeightParams& p, const MomentTable& table, Sampler& rng,
                                   int checks = 20, double r = 0.45);

// Trapezoidal rule for the normalized measure w d(theta) / mass on the circle.
struct CircleQuadrature {
  std::vector<Complex> nodes;
  std::vector<Real> weights;
};

CircleQuadrature circle_quadrature(const QWeightParams& p, int nodes);

nlohmann::json to_json(const MomentTable& t, const QWeightParams& p);
nlohmann::json complex_json(const Complex& z);

}  // namespace qpvi
