#include "qpvi/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpvi {

namespace {

void guard_state(const ODEState& s, double guard, const char* who) {
  if (abs(s.t) <= guard) throw SingularityError(std::string(who) + ": t reached the singular point 0");
  if (abs(Complex(1) - s.t) <= guard) throw SingularityError(std::string(who) + ": t reached the singular point 1");
  if (abs(s.v) <= guard) throw SingularityError(std::string(who) + ": v vanished");
}

Real field_eps() { return pow2(-static_cast<int>(working_precision_bits() / 3)); }

}  // namespace

LimitParams LimitParams::with_constraint(const Complex& K1, const Complex& K2, const Complex& T1,
                                         const std::array<Complex, 4>& C) {
  LimitParams lp{K1, K2, T1, K1 + K2 + C[0] + C[1] + C[2] + C[3] - T1, C};
  return lp;
}

Derivative ode_rhs(const ODEState& s, const LimitParams& lp) {
  guard_state(s, 0.0, "ode_rhs");
  const Complex& t = s.t;
  const Complex& u = s.u;
  const Complex& v = s.v;
  const auto& C = lp.C;
  const Complex w = t * (Complex(1) - t);
  const Complex du = t * v * (u - C[2]) * (u - C[3]) - t * (t - Complex(1)) / v * (u - C[0]) * (u - C[1]);
  const Complex dv = v * (Complex(2) * u + Complex(2) * t * (lp.K2 - lp.T1) + C[0] + C[1] - lp.K1 - lp.T1) +
                     Complex(2) * u * (t - Complex(1)) + C[0] + C[1] - t * (C[2] + C[3]) +
                     (Complex(2) * u * t - t * (Complex(1) + lp.K2) + Complex(2) * (Complex(1) + lp.T2) - C[2] - C[3]) / v;
  return {du / w, dv / w};
}

Derivative ode_rhs_expanded(const ODEState& s, const LimitParams& lp) {
  guard_state(s, 0.0, "ode_rhs_expanded");
  const Complex t = s.t, u = s.u, v = s.v;
  const Complex C1 = lp.C[0], C2 = lp.C[1], C3 = lp.C[2], C4 = lp.C[3];
  const Complex den = t - t * t;
  const Complex p12 = u * u - (C1 + C2) * u + C1 * C2;
  const Complex p34 = u * u - (C3 + C4) * u + C3 * C4;
  const Complex du = (t * v * p34 + den * p12 / v) / den;
  const Complex lin = Complex(2) * u + Complex(2) * t * lp.K2 - Complex(2) * t * lp.T1 + C1 + C2 - lp.K1 - lp.T1;
  const Complex cst = Complex(2) * u * t - Complex(2) * u + C1 + C2 - t * C3 - t * C4;
  const Complex inv = Complex(2) * u * t - t - t * lp.K2 + Complex(2) + Complex(2) * lp.T2 - C3 - C4;
  const Complex dv = (v * lin + cst + inv / v) / den;
  return {du, dv};
}

Derivative specialized_rhs(const ODEState& s, const Real& a, const Real& b) {
  guard_state(s, 0.0, "specialized_rhs");
  const Complex t = s.t, u = s.u, v = s.v;
  const Complex A(a), B(b);
  const Complex w = t * (Complex(1) - t);
  const Complex du = t * v * (u + B) * (u + A) - t * (t - Complex(1)) / v * (u - A + Complex(1)) * (u - B + Complex(1));
  const Complex dv = v * (Complex(2) * u + Complex(2) * t * (A - B - Complex(1)) + A - B + Complex(3)) +
                     Complex(2) * u * (t - Complex(1)) + A + B + Complex(2) + t * (A + B) +
                     ((Complex(2) * u - A) * t + Complex(2) + Complex(3) * A + B) / v;
  return {du / w, dv / w};
}

LimitParams specialized_dictionary(const Real& a, const Real& b, KappaConvention conv) {
  const Complex A(a), B(b);
  // kappa2 = aq, theta2 = conj(a), c = (conj(a)/q, conj(b)/q, 1/b, 1/a)
  const std::array<Complex, 4> C{A + Complex(1), B + Complex(1), -B, -A};
  const Complex K2 = A - Complex(1);
  // kappa1 = bq, theta1 = conj(b), with the t dependence carried by the kappa1/theta1 pair.
  const Complex shift = conv == KappaConvention::QKappa ? Complex(1) : Complex(0);
  const Complex K1 = B - Complex(1) - shift;
  const Complex T1 = B - shift;
  return LimitParams::with_constraint(K1, K2, T1, C);
}

SubstitutionReport specialized_substitution_check(const Real& a, const Real& b, KappaConvention conv, Sampler& rng,
                                                  int samples) {
  const LimitParams lp = specialized_dictionary(a, b, conv);
  SubstitutionReport r{Real(0), Real(0)};
  for (int i = 0; i < samples; ++i) {
    const ODEState s{Complex(rng.uniform(0.1, 0.9)) + Complex(Real(0), rng.uniform(-0.2, 0.2)),
                     rng.uniform_box(-1, 1), rng.uniform_disc(0.3, 2)};
    const Derivative g = ode_rhs(s, lp);
    const Derivative p = specialized_rhs(s, a, b);
    r.du_residual = std::max(r.du_residual, rel_diff(p.du, g.du, Real(1)));
    r.dv_residual = std::max(r.dv_residual, rel_diff(p.dv, g.dv, Real(1)));
  }
  return r;
}

namespace {

// Dormand-Prince 5(4) tableau as integer ratios.
struct Ratio {
  long n, d;
};
const Ratio kC[7] = {{0, 1}, {1, 5}, {3, 10}, {4, 5}, {8, 9}, {1, 1}, {1, 1}};
const Ratio kA[7][6] = {
    {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
    {{1, 5}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
    {{3, 40}, {9, 40}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
    {{44, 45}, {-56, 15}, {32, 9}, {0, 1}, {0, 1}, {0, 1}},
    {{19372, 6561}, {-25360, 2187}, {64448, 6561}, {-212, 729}, {0, 1}, {0, 1}},
    {{9017, 3168}, {-355, 33}, {46732, 5247}, {49, 176}, {-5103, 18656}, {0, 1}},
    {{35, 384}, {0, 1}, {500, 1113}, {125, 192}, {-2187, 6784}, {11, 84}}};
const Ratio kB5[7] = {{35, 384}, {0, 1}, {500, 1113}, {125, 192}, {-2187, 6784}, {11, 84}, {0, 1}};
const Ratio kB4[7] = {{5179, 57600}, {0, 1}, {7571, 16695}, {393, 640}, {-92097, 339200}, {187, 2100}, {1, 40}};

Real frac(Ratio r) { return Real(r.n) / Real(r.d); }

struct Tableau {
  Real c[7], a[7][6], b5[7], b4[7];
  Tableau() {
    for (int i = 0; i < 7; ++i) {
      c[i] = frac(kC[i]);
      b5[i] = frac(kB5[i]);
      b4[i] = frac(kB4[i]);
      for (int j = 0; j < 6; ++j) a[i][j] = frac(kA[i][j]);
    }
  }
};

void integrate_segment(const RhsFn& rhs, ODEState& s, const Complex& t_end, const Real& tol, double guard,
                       Trajectory& tr) {
  const Tableau tb;
  const Complex t_start = s.t;
  const Complex dt = t_end - t_start;
  if (abs(dt) == 0) return;
  Real pos(0), h("0.01");
  const Real hmin = pow2(-40);
  int steps = 0;
  while (pos < 1) {
    if (++steps > 1000000) throw StepFailure("integrate: step budget exhausted");
    if (pos + h > 1) h = Real(1) - pos;
    Complex ku[7], kv[7];
    for (int i = 0; i < 7; ++i) {
      ODEState st{t_start + Complex(pos + tb.c[i] * h) * dt, s.u, s.v};
      for (int j = 0; j < i; ++j) {
        st.u += Complex(h * tb.a[i][j]) * ku[j];
        st.v += Complex(h * tb.a[i][j]) * kv[j];
      }
      guard_state(st, guard, "integrate");
      const Derivative d = rhs(st);
      ku[i] = d.du * dt;
      kv[i] = d.dv * dt;
    }
    Complex u5 = s.u, v5 = s.v, eu(0), ev(0);
    for (int i = 0; i < 7; ++i) {
      u5 += Complex(h * tb.b5[i]) * ku[i];
      v5 += Complex(h * tb.b5[i]) * kv[i];
      eu += Complex(h * (tb.b5[i] - tb.b4[i])) * ku[i];
      ev += Complex(h * (tb.b5[i] - tb.b4[i])) * kv[i];
    }
    const Real scale_u = tol * (Real(1) + std::max(abs(s.u), abs(u5)));
    const Real scale_v = tol * (Real(1) + std::max(abs(s.v), abs(v5)));
    const Real err = std::max(abs(eu) / scale_u, abs(ev) / scale_v);
    if (err <= 1) {
      pos += h;
      s.u = u5;
      s.v = v5;
      s.t = pos >= 1 ? t_end : t_start + Complex(pos) * dt;
      ++tr.accepted_steps;
      if (abs(s.u) > 1e12 || abs(s.v) > 1e12) throw SingularityError("integrate: solution blew up");
    } else {
      ++tr.rejected_steps;
    }
    const double e = std::max(to_double(err), 1e-30);
    const double factor = std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    h *= Real(factor);
    if (h < hmin && pos < 1) throw StepFailure("integrate: step size underflow");
  }
}

}  // namespace

Trajectory integrate(const RhsFn& rhs, const ODEState& s0, const Complex& t1, const Real& tol,
                     const std::vector<Complex>& at, double guard) {
  if (!(tol > 0)) throw ConfigError("integrate: tolerance must be positive");
  Trajectory tr;
  ODEState s = s0;
  guard_state(s, guard, "integrate");
  tr.samples.push_back(s);
  for (const Complex& ts : at) {
    integrate_segment(rhs, s, ts, tol, guard, tr);
    s.t = ts;
    tr.samples.push_back(s);
  }
  integrate_segment(rhs, s, t1, tol, guard, tr);
  s.t = t1;
  tr.samples.push_back(s);
  return tr;
}

Trajectory integrate(const LimitParams& lp, const ODEState& s0, const Complex& t1, const Real& tol,
                     const std::vector<Complex>& at, double guard) {
  return integrate([&lp](const ODEState& s) { return ode_rhs(s, lp); }, s0, t1, tol, at, guard);
}

SurfaceParams discrete_params(const LimitParams& lp, const Complex& t, const Real& eps, KappaConvention conv) {
  const Real q = Real(1) - eps;
  const Complex E(eps);
  SurfaceParams sp;
  sp.q = q;
  const Complex tk = conv == KappaConvention::QKappa ? t / Complex(q) : t;
  sp.kappa1 = tk * (Complex(1) + E * lp.K1);
  sp.theta1 = tk * (Complex(1) + E * lp.T1);
  sp.kappa2 = Complex(1) + E * lp.K2;
  for (int i = 0; i < 4; ++i) sp.c[i] = Complex(1) + E * lp.C[i];
  // theta2 from the exact constraint so the point stays on the surface family.
  sp.theta2 = sp.kappa1 * sp.kappa2 * sp.c[0] * sp.c[1] * sp.c[2] * sp.c[3] / sp.theta1;
  return sp;
}

Derivative discrete_difference_field(const ODEState& s, const LimitParams& lp, const Real& eps, KappaConvention conv) {
  const SurfaceParams sp = discrete_params(lp, s.t, eps, conv);
  const Complex E(eps);
  const StepResult r = phi_step(SurfaceCoords{Complex(1) + E * s.u, s.v}, sp);
  const Complex ut = (r.coords.y - Complex(1)) / E;
  const Complex dt = -E * s.t;
  return {(ut - s.u) / dt, (r.coords.xi - s.v) / dt};
}

ExpansionReport expansion_check(const LimitParams& lp, Sampler& rng, int samples) {
  const Real eps = field_eps();
  ExpansionReport r{Real(0), Real(0), Real(0)};
  for (int i = 0; i < samples; ++i) {
    const ODEState s{Complex(rng.uniform(0.2, 0.8)), rng.uniform_box(-1, 1), rng.uniform_disc(0.5, 1.5)};
    const Derivative f = discrete_difference_field(s, lp, eps);
    const Derivative f2 = discrete_difference_field(s, lp, eps / 2);
    const Derivative p = ode_rhs(s, lp);
    r.du_mismatch = std::max(r.du_mismatch, rel_diff(f.du, p.du, Real(1)));
    r.dv_mismatch = std::max(r.dv_mismatch, rel_diff(f.dv, p.dv, Real(1)));
    r.fd_noise = std::max(r.fd_noise, std::max(rel_diff(f.du, f2.du, Real(1)), rel_diff(f.dv, f2.dv, Real(1))));
  }
  return r;
}

LimitConfig reference_limit_config() {
  LimitConfig cfg;
  cfg.lp = LimitParams::with_constraint(Complex(0.3), Complex(-0.2), Complex(0.1),
                                        {Complex(0.2), Complex(-0.1), Complex(0.4), Complex(-0.3)});
  cfg.s0 = ODEState{Complex(0.6), Complex(0.1), Complex(2.0)};
  cfg.t1 = Complex(0.3);
  return cfg;
}

namespace {

std::vector<double> orders(const std::vector<double>& eps, const std::vector<double>& err) {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < err.size(); ++i) {
    if (!std::isfinite(err[i]) || !std::isfinite(err[i + 1]) || err[i + 1] <= 0) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(std::log(err[i] / err[i + 1]) / std::log(eps[i] / eps[i + 1]));
  }
  return out;
}

double state_error(const ODEState& a, const Complex& u, const Complex& v) {
  return to_double(std::max(abs(a.u - u), abs(a.v - v)));
}

}  // namespace

LimitCheckReport limit_check(const LimitConfig& cfg) {
  LimitCheckReport rep;
  const Real ode_tol = pow2(-44);
  const Real field = field_eps();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double e : cfg.eps_list) {
    const Real eps(e);
    const Real q = Real(1) - eps;
    const int k = static_cast<int>(std::lround(std::log(to_double(abs(cfg.t1 / cfg.s0.t))) / std::log(1 - e)));
    rep.eps.push_back(e);
    rep.steps.push_back(k);
    SurfaceParams sp = discrete_params(cfg.lp, cfg.s0.t, eps);
    SurfaceCoords pt{Complex(1) + Complex(eps) * cfg.s0.u, cfg.s0.v};
    bool orbit_ok = true;
    try {
      for (int i = 0; i < k; ++i) {
        const StepResult r = phi_step(pt, sp);
        pt = r.coords;
        sp = r.params;
      }
    } catch (const NumericalError& ex) {
      orbit_ok = false;
      rep.notes.push_back("eps=" + std::to_string(e) + ": discrete orbit failed: " + ex.what());
    }
    const Complex t_end = cfg.s0.t * ipow(q, k);
    const Complex ud = (pt.y - Complex(1)) / Complex(eps);
    double err = nan, err_field = nan;
    if (orbit_ok) {
      try {
        const Trajectory tr = integrate(cfg.lp, cfg.s0, t_end, ode_tol);
        err = state_error(tr.samples.back(), ud, pt.xi);
      } catch (const NumericalError& ex) {
        rep.notes.push_back("eps=" + std::to_string(e) + ": printed system: " + ex.what());
      }
      try {
        const LimitParams lp = cfg.lp;
        const Trajectory tr = integrate(
            [&lp, &field](const ODEState& s) { return discrete_difference_field(s, lp, field); }, cfg.s0, t_end, ode_tol);
        err_field = state_error(tr.samples.back(), ud, pt.xi);
      } catch (const NumericalError& ex) {
        rep.notes.push_back("eps=" + std::to_string(e) + ": difference field: " + ex.what());
      }
    }
    rep.error.push_back(err);
    rep.error_vs_field.push_back(err_field);
  }
  rep.order = orders(rep.eps, rep.error);
  rep.order_vs_field = orders(rep.eps, rep.error_vs_field);
  rep.monotone = true;
  for (size_t i = 0; i + 1 < rep.error.size(); ++i)
    if (!(rep.error[i + 1] < rep.error[i])) rep.monotone = false;
  for (double x : rep.error)
    if (!std::isfinite(x)) rep.monotone = false;
  rep.min_order = rep.order.empty() ? nan : rep.order[0];
  for (double o : rep.order) rep.min_order = std::isnan(o) ? o : std::min(rep.min_order, o);
  rep.pass = rep.monotone && std::isfinite(rep.min_order) && rep.min_order >= cfg.order_threshold;
  return rep;
}

nlohmann::json to_json(const LimitCheckReport& r) {
  auto arr = [](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr));
    return a;
  };
  nlohmann::json j;
  j["eps"] = arr(r.eps);
  j["steps"] = r.steps;
  j["error"] = arr(r.error);
  j["order"] = arr(r.order);
  j["error_vs_difference_field"] = arr(r.error_vs_field);
  j["order_vs_difference_field"] = arr(r.order_vs_field);
  j["monotone"] = r.monotone;
  j["min_order"] = std::isfinite(r.min_order) ? nlohmann::json(r.min_order) : nlohmann::json(nullptr);
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << "re_t,im_t,re_u,im_u,re_v,im_v\n";
  for (const auto& s : tr.samples)
    os << to_string(s.t.re, 17) << ',' << to_string(s.t.im, 17) << ',' << to_string(s.u.re, 17) << ','
       << to_string(s.u.im, 17) << ',' << to_string(s.v.re, 17) << ',' << to_string(s.v.im, 17) << '\n';
  return os.str();
}

}  // namespace qpvi
