#pragma once

#include "qpvi/opuc.hpp"
#include "qpvi/poly.hpp"
#include "qpvi/qseries.hpp"

#include <json.hpp>

namespace qpvi {

// B_n(z) = (z, alpha; z conj(alpha), 1)
MatPoly2 build_B(const Complex& alpha_next);

struct LaxFit {
  int n = 0;
  MatPoly2 A;
  CPoly U;         // Caratheodory polynomial recovered alongside A
  Real residual;   // least-squares residual, max over equations
  CPoly theta;     // -e12 / alpha_{n+1}
};

// Fits A_n from V phi_n(qz) = e11 phi_n + e12 phi*_n, V phi*_n(qz) = e21 phi_n + e22 phi*_n,
// and the matching second-kind identities with W, all as coefficient equations.
// Throws DegenerateError if alpha_{n+1} = 0 and FitError if the residual exceeds tol.
LaxFit fit_A(const VerblunskyTable& vt, const QWeightParams& p, int n, const Real& tol = Real(0));

// (a - b q^{n+1}) z + (conj(b) q^n - conj(a)) alpha_n / alpha_{n+1}
CPoly theta_closed_form(const VerblunskyTable& vt, const QWeightParams& p, int n);

struct CornerReport {
  Real e11_lead, e11_const, e22_lead, e22_const;  // absolute deviations
  Real max() const;
};

// Deviation of the diagonal corner data from (b q^{n+1}, conj(b) q^n, a q, conj(a)).
CornerReport corner_check(const MatPoly2& A, const QWeightParams& p, int n);

struct LaxQReport {
  Real phi_identity;       // coefficient residual of V phi(qz) - e11 phi - e12 phi*
  Real phi_star_identity;  // coefficient residual of V phi*(qz) - e21 phi - e22 phi*
  Real eps_identity;       // relative residual of the eps column at sample points
  Real eps_star_identity;
};

LaxQReport check_lax_q(const VerblunskyTable& vt, const QWeightParams& p, int n, const MatPoly2& A,
                       Sampler& rng, int samples = 10, double radius = 0.3);

// max coefficient of A_{n+1} B_n - B_n(q.) A_n
Real check_compat(const MatPoly2& A_n, const MatPoly2& A_next, const MatPoly2& B_n, const Real& q);

struct DetLawReport {
  Complex constant;     // det A_n / (V W)
  Real constancy;       // max coefficient of det A_n - constant V W, relative
  Real modulus_error;   // | |constant| - q^n |
  int sign = 0;         // +1 if constant is near +q^n, -1 near -q^n, 0 otherwise
};

DetLawReport det_law(const MatPoly2& A, const QWeightParams& p, int n);

nlohmann::json to_json(const MatPoly2& m);

}  // namespace qpvi
