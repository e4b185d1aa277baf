#pragma once

#include "qpvi/numeric.hpp"
#include "qpvi/painleve.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace qpvi {

struct LimitParams {
  Complex K1, K2, T1, T2;
  std::array<Complex, 4> C;

  // T2 from the first-order constraint K1 + K2 + sum C = T1 + T2.
  static LimitParams with_constraint(const Complex& K1, const Complex& K2, const Complex& T1,
                                     const std::array<Complex, 4>& C);
};

struct ODEState {
  Complex t, u, v;
};

struct Derivative {
  Complex du, dv;
};

using RhsFn = std::function<Derivative(const ODEState&)>;

// t(1-t) u' = t v (u-C3)(u-C4) - t(t-1) v^-1 (u-C1)(u-C2)
// t(1-t) v' = v[2u + 2t(K2-T1) + C1 + C2 - K1 - T1] + 2u(t-1) + C1 + C2 - t(C3+C4)
//             + v^-1 [2ut - t(1+K2) + 2(1+T2) - C3 - C4]
// returned divided by t(1-t). Throws SingularityError at t in {0,1} or v = 0.
Derivative ode_rhs(const ODEState& s, const LimitParams& lp);

// The same system typed independently in expanded form.
Derivative ode_rhs_expanded(const ODEState& s, const LimitParams& lp);

// The system stated for the real-parameter weight after a -> 1 + eps a, b -> 1 + eps b.
Derivative specialized_rhs(const ODEState& s, const Real& a, const Real& b);

enum class KappaConvention {
  QKappa,  // q kappa1 = t(1 + eps K1), q theta1 = t(1 + eps T1)
  Kappa,   // kappa1 = t(1 + eps K1), theta1 = t(1 + eps T1)
};

// K/T/C values induced by kappa1 = bq, theta1 = conj(b), kappa2 = aq, theta2 = conj(a),
// c = (conj(a)/q, conj(b)/q, 1/b, 1/a) under q = 1 - eps, a -> 1 + eps a, b -> 1 + eps b.
LimitParams specialized_dictionary(const Real& a, const Real& b, KappaConvention conv);

struct SubstitutionReport {
  Real du_residual;  // max relative gap of the u equation
  Real dv_residual;
};

SubstitutionReport specialized_substitution_check(const Real& a, const Real& b, KappaConvention conv, Sampler& rng,
                                                  int samples = 50);

struct Trajectory {
  std::vector<ODEState> samples;
  int accepted_steps = 0;
  int rejected_steps = 0;
};

// Dormand-Prince 5(4) along the straight segment from s0.t to t1, local error
// per unit step <= tol. Samples at s0.t, every entry of `at` (ordered along the
// path) and t1. Guards |t|, |1-t|, |v| >= guard.
Trajectory integrate(const RhsFn& rhs, const ODEState& s0, const Complex& t1, const Real& tol,
                     const std::vector<Complex>& at = {}, double guard = 1e-3);

Trajectory integrate(const LimitParams& lp, const ODEState& s0, const Complex& t1, const Real& tol,
                     const std::vector<Complex>& at = {}, double guard = 1e-3);

// Discrete surface data at time t for a given eps.
SurfaceParams discrete_params(const LimitParams& lp, const Complex& t, const Real& eps,
                              KappaConvention conv = KappaConvention::QKappa);

// ((u~ - u) / (-eps t), (v~ - v) / (-eps t)) for one phi_step at time t.
Derivative discrete_difference_field(const ODEState& s, const LimitParams& lp, const Real& eps,
                                     KappaConvention conv = KappaConvention::QKappa);

struct ExpansionReport {
  Real du_mismatch;  // max relative gap between the eps -> 0 field and ode_rhs
  Real dv_mismatch;
  Real fd_noise;     // gap between the field at eps and eps/2, a proxy for its error
};

ExpansionReport expansion_check(const LimitParams& lp, Sampler& rng, int samples = 10);

struct LimitCheckReport {
  std::vector<double> eps;
  std::vector<int> steps;
  std::vector<double> error;             // discrete orbit vs printed system
  std::vector<double> error_vs_field;    // discrete orbit vs the eps -> 0 difference field
  std::vector<double> order;             // log2 ratios of consecutive errors (vs printed system)
  std::vector<double> order_vs_field;
  std::vector<std::string> notes;
  bool monotone = false;
  double min_order = 0;
  bool pass = false;
};

struct LimitConfig {
  LimitParams lp;
  ODEState s0;
  Complex t1;
  std::vector<double> eps_list{1e-2, 5e-3, 2.5e-3};
  double order_threshold = 0.8;
};

// Reference configuration (implementer-chosen; no initial data is given for the limit system).
LimitConfig reference_limit_config();

LimitCheckReport limit_check(const LimitConfig& cfg);

nlohmann::json to_json(const LimitCheckReport& r);
std::string trajectory_csv(const Trajectory& tr);

}  // namespace qpvi
