#include "qpvi/painleve.hpp"

#include <algorithm>

namespace qpvi {

namespace {

Real guard() { return pow2(-static_cast<int>(working_precision_bits()) / 2); }

Real max_abs(std::initializer_list<Complex> xs) {
  Real m(0);
  for (const auto& x : xs) m = std::max(m, abs(x));
  return m;
}

bool negligible(const Complex& x, const Real& scale) { return abs(x) <= guard() * std::max(scale, Real(1e-300)); }

}  // namespace

Complex SurfaceParams::sigma1() const { return c[0] + c[1] + c[2] + c[3]; }

Complex SurfaceParams::sigma3() const {
  return c[0] * c[1] * c[2] + c[0] * c[1] * c[3] + c[0] * c[2] * c[3] + c[1] * c[2] * c[3];
}

Real SurfaceParams::constraint_residual() const {
  const Complex rhs = theta1 * theta2;
  return abs(kappa1 * kappa2 * c[0] * c[1] * c[2] * c[3] - rhs) / abs(rhs);
}

void SurfaceParams::check(const Real& tol) const {
  for (const auto* x : {&kappa1, &kappa2, &theta1, &theta2, &c[0], &c[1], &c[2], &c[3]})
    if (abs(*x) == 0) throw ConstraintError("surface parameters must be nonzero");
  Real r = constraint_residual();
  if (r > tol) throw ConstraintError("kappa1 kappa2 c1 c2 c3 c4 != theta1 theta2 (relative gap " + to_string(r, 6) + ")");
}

SurfaceParams SurfaceParams::stepped() const {
  SurfaceParams s = *this;
  s.kappa1 = kappa1 * Complex(q);
  s.theta1 = theta1 * Complex(q);
  return s;
}

SurfaceParams params_from_weight(const QWeightParams& p, int n) {
  if (n < 1) throw DomainError("params_from_weight: n must be >= 1");
  if (abs(p.a) == 0 || abs(p.b) == 0) throw ConstraintError("params_from_weight: a and b must be nonzero");
  const Complex q(p.q);
  SurfaceParams sp;
  sp.q = p.q;
  sp.kappa1 = p.b * ipow(p.q, n + 1);
  sp.kappa2 = p.a * q;
  sp.theta1 = conj(p.b) * ipow(p.q, n);
  sp.theta2 = conj(p.a);
  sp.c = {conj(p.a) / q, Complex(1) / p.b, conj(p.b) / q, Complex(1) / p.a};
  sp.check(pow2(-static_cast<int>(working_precision_bits()) + 16));
  return sp;
}

MatPoly2 gauge_normalize(const MatPoly2& A) {
  if (A.e12().degree() != 1) throw GaugeError("12 entry must have degree exactly 1");
  const Complex lead = A.e12().c[1];
  MatPoly2 B = A;
  B.e[1] = (Complex(1) / lead) * CPoly{A.e12().c[0], A.e12().c[1]};
  B.e[2] = lead * A.e21();
  return B;
}

ExtractedCoords extract_coords(const MatPoly2& A, const SurfaceParams& sp, const Real& tol) {
  const MatPoly2 B = gauge_normalize(A);
  const Complex y = -B.e12().c[0];
  const auto& c = sp.c;
  const Complex xi = (y - c[0]) * (y - c[1]) / B.e11()(y);
  const Complex alt = B.e22()(y) / (sp.kappa1 * sp.kappa2 * (y - c[2]) * (y - c[3]));
  ExtractedCoords r{{y, xi}, rel_diff(alt, xi)};
  const Real gate = tol > 0 ? tol : guard();
  if (r.consistency > gate)
    throw ConsistencyError("extract_coords: xi expressions differ by " + to_string(r.consistency, 6));
  return r;
}

MatPoly2 js_matrix(const SurfaceCoords& pt, const SurfaceParams& sp) {
  if (pt.y_inf || pt.xi_inf) throw DomainError("js_matrix: finite coordinates required");
  const Complex& y = pt.y;
  const auto& c = sp.c;
  const Complex z1 = (y - c[0]) * (y - c[1]) / (sp.kappa1 * pt.xi);
  const Complex z2 = (y - c[0]) * (y - c[1]) * (y - c[2]) * (y - c[3]) / z1;
  const Complex al = (sp.theta1 / sp.kappa1 - z1) / y;
  const Complex de = (sp.theta2 / sp.kappa2 - z2) / y;
  const CPoly zy{-y, Complex(1)};
  MatPoly2 A;
  A.e[0] = sp.kappa1 * (zy * CPoly{-al, Complex(1)} + CPoly{z1});
  A.e[1] = zy;
  A.e[3] = sp.kappa2 * (zy * CPoly{-de, Complex(1)} + CPoly{z2});
  const CPoly target = CPoly::from_roots({c[0], c[1], c[2], c[3]}, sp.kappa1 * sp.kappa2);
  auto [quo, rem] = divmod(A.e[0] * A.e[3] - target, zy * CPoly{Complex(0), Complex(1)});
  if (max_abs_coeff(rem) > guard() * std::max(max_abs_coeff(target), Real(1)))
    throw ConstraintError("js_matrix: parameters violate the determinant constraint");
  quo.c.resize(2);
  A.e[2] = zshift(quo, 1);
  return A;
}

namespace {

struct STValues {
  Complex S, T;
  Real t_scale;
};

STValues eval_ST(const Complex& y, const Complex& xi, const SurfaceParams& sp) {
  const Complex q(sp.q);
  const auto& k1 = sp.kappa1;
  const auto& k2 = sp.kappa2;
  const auto& t1 = sp.theta1;
  const auto& t2 = sp.theta2;
  const auto& c = sp.c;
  const Complex s1 = sp.sigma1(), s3 = sp.sigma3();
  const Complex p34 = (y - c[2]) * (y - c[3]), p12 = (y - c[0]) * (y - c[1]);
  const Complex mix = q * q * k1 * t1 + k2 * t2;
  const Complex xi2 = xi * xi;
  const Complex S = -(q * k1 * k2 * t1 * xi2 * p34) + xi * (mix * y * y - q * k1 * k2 * s3 * y + Complex(2) * q * t1 * t2) -
                    q * t2 * p12;
  const Complex Ta = -(k1 * k2 * k2 * xi2 * p34);
  const Complex Tb = xi * (Complex(2) * q * k1 * k2 * y * y - q * k1 * k2 * s1 * y + mix);
  const Complex Tc = -(q * q * k1 * p12);
  return {S, Ta + Tb + Tc, max_abs({Ta, Tb, Tc})};
}

struct XiFactors {
  std::array<Complex, 4> f;  // numerator pair, denominator pair
};

XiFactors xi_factors(const Complex& y, const Complex& xi, const SurfaceParams& sp) {
  const Complex q(sp.q);
  const auto& c = sp.c;
  const Complex qk2 = q / sp.kappa2;
  return {{xi * (y - q * sp.theta1 / (c[0] * sp.kappa2)) - qk2 * (y - c[1]),
           xi * (y - q * sp.theta1 / (c[1] * sp.kappa2)) - qk2 * (y - c[0]),
           xi * (y - c[3]) - qk2 * (y - sp.theta2 / (q * c[2] * sp.kappa1)),
           xi * (y - c[2]) - qk2 * (y - sp.theta2 / (q * c[3] * sp.kappa1))}};
}

std::string nearest_blown_up(const SurfaceCoords& pt, const SurfaceParams& sp) {
  std::string best = "none";
  Real bd(0);
  bool first = true;
  for (const auto& b : blown_up_points(sp)) {
    Real d(0);
    auto coord = [&](const Complex& a, bool ainf, const Complex& bv, bool binf) {
      if (ainf || binf) return ainf == binf ? Real(0) : Real(1) / (Real(1) + abs(ainf ? bv : a));
      return abs(a - bv) / (Real(1) + abs(bv));
    };
    d = coord(pt.y, pt.y_inf, b.at.y, b.at.y_inf) + coord(pt.xi, pt.xi_inf, b.at.xi, b.at.xi_inf);
    if (first || d < bd) {
      bd = d;
      best = b.name;
      first = false;
    }
  }
  return best;
}

[[noreturn]] void indeterminate(const std::string& what, const SurfaceCoords& pt, const SurfaceParams& sp) {
  throw IndeterminacyError("phi_step: " + what + " vanishes (nearest blown-up point " + nearest_blown_up(pt, sp) + ")");
}

}  // namespace

Complex xitilde_as_printed(const SurfaceCoords& pt, const SurfaceParams& sp) {
  const auto f = xi_factors(pt.y, pt.xi, sp);
  return sp.c[0] * sp.c[1] / (sp.kappa1 * sp.theta1 * pt.xi) * (f.f[0] * f.f[1]) / (f.f[2] * f.f[3]);
}

StepResult phi_step(const SurfaceCoords& pt, const SurfaceParams& sp) {
  if (pt.y_inf || pt.xi_inf) indeterminate("a finite chart coordinate", pt, sp);
  const Complex& y = pt.y;
  const Complex& xi = pt.xi;
  const Real scale = Real(1) + abs(y);
  if (negligible(y, scale)) indeterminate("y", pt, sp);
  if (negligible(xi, Real(1) + abs(xi))) indeterminate("xi", pt, sp);
  const STValues st = eval_ST(y, xi, sp);
  if (negligible(st.T, st.t_scale)) indeterminate("T", pt, sp);
  const auto f = xi_factors(y, xi, sp);
  const Real fscale = abs(xi) * scale + scale;
  for (int i = 0; i < 4; ++i)
    if (negligible(f.f[i], fscale)) indeterminate(i < 2 ? "a xi-tilde numerator factor" : "a xi-tilde denominator factor", pt, sp);
  StepResult r;
  r.coords.y = st.S / (y * st.T);
  r.coords.xi = xitilde_as_printed(pt, sp) / Complex(sp.q);
  r.params = sp.stepped();
  return r;
}

MatrixStepResult matrix_step(const MatPoly2& A0, const SurfaceParams& sp) {
  const MatPoly2 A = gauge_normalize(A0);
  const Complex q(sp.q);
  const Complex beta = A.e21().coeff(1);
  const Complex dk = q * sp.kappa1 - sp.kappa2, dt = q * sp.theta1 - sp.theta2;
  const Complex delta = dk * dt + q * beta;
  if (abs(delta) < guard() * (abs(dk * dt) + abs(q * beta)))
    throw SingularGaugeError("matrix_step: B is singular (Delta = 0)");
  // B(z) = (z dk, q; -z beta, dt); z Delta B(z)^{-1} = (dt, -q; beta z, dk z).
  const MatPoly2 B{{CPoly{Complex(0), dk}, CPoly{q}, CPoly{Complex(0), -beta}, CPoly{dt}}};
  const MatPoly2 adj{{CPoly{dt}, CPoly{-q}, CPoly{Complex(0), beta}, CPoly{Complex(0), dk}}};
  const MatPoly2 P = qshift(B, q) * A * adj;
  MatrixStepResult r;
  r.beta = beta;
  r.delta = delta;
  r.division_residual = 0;
  const Real scale = std::max(max_abs_coeff(P), Real(1e-300));
  for (int i = 0; i < 4; ++i) {
    r.division_residual = std::max(r.division_residual, abs(P.e[i].coeff(0)) / scale);
    // Quadratic entries, linear 12 entry; anything above is cancellation residue.
    const size_t keep = i == 1 ? 2 : 3;
    CPoly e;
    for (size_t k = 1; k < P.e[i].c.size(); ++k) {
      if (k - 1 < keep) e.c.push_back(P.e[i].c[k] / delta);
      else r.division_residual = std::max(r.division_residual, abs(P.e[i].c[k]) / scale);
    }
    r.A.e[i] = e;
  }
  return r;
}

MatrixStepChecks check_matrix_step(const MatPoly2& A, const MatrixStepResult& r, const SurfaceParams& sp) {
  const Complex q(sp.q);
  const SurfaceParams nx = sp.stepped();
  MatrixStepChecks c;
  const CPoly dA = A.det();
  c.det_ratio = max_abs_coeff(r.A.det() - q * dA) / std::max(max_abs_coeff(dA), Real(1e-300));
  auto spec = [](const Complex& a11, const Complex& a12, const Complex& a21, const Complex& a22,
                 const Complex& l1, const Complex& l2) {
    const Real s = abs(l1) + abs(l2);
    return std::max(abs(a11 + a22 - l1 - l2) / s, abs(a11 * a22 - a12 * a21 - l1 * l2) / (s * s));
  };
  const auto& At = r.A;
  c.lead_spectrum = spec(At.e11().coeff(2), At.e12().coeff(2), At.e21().coeff(2), At.e22().coeff(2), nx.kappa1, nx.kappa2);
  c.const_spectrum = spec(At.e11().coeff(0), At.e12().coeff(0), At.e21().coeff(0), At.e22().coeff(0), nx.theta1, nx.theta2);
  const Complex w = At.e12().coeff(1);
  const Complex yt = -At.e12().coeff(0) / w;
  c.w_ytilde = abs(w * yt - q);
  return c;
}

FactorizationReport factorization_check(const SurfaceParams& sp, const Complex& y) {
  const Complex q(sp.q);
  const auto& k1 = sp.kappa1;
  const auto& k2 = sp.kappa2;
  const auto& t1 = sp.theta1;
  const auto& t2 = sp.theta2;
  const auto& c = sp.c;
  // Quadratic-in-xi coefficients from values at xi = 0, 1, -1.
  auto coeffs = [](auto&& f) {
    const Complex f0 = f(Complex(0)), fp = f(Complex(1)), fm = f(Complex(-1));
    const Complex half(Real(1) / 2);
    return std::array<Complex, 3>{f0, (fp - fm) * half, (fp + fm) * half - f0};
  };
  auto gap = [](const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
    Real s(0), d(0);
    for (int i = 0; i < 3; ++i) {
      s = std::max(s, abs(a[i]));
      d = std::max(d, abs(a[i] - b[i]));
    }
    return d / std::max(s, Real(1e-300));
  };
  auto lhs = [&](const Complex& ci) {
    return coeffs([&](const Complex& xi) {
      auto st = eval_ST(y, xi, sp);
      return st.S - ci * y * st.T;
    });
  };
  // First displayed product with (c1, c2, c3, c4) -> (a, b, cc, d).
  auto form_a = [&](const Complex& a, const Complex& b, const Complex& cc, const Complex& d) {
    return coeffs([&](const Complex& xi) {
      return (xi * (a * y * k2 - q * t1) - q * a * (y - b)) *
             (k1 * k2 * xi * (y - cc) * (y - d) - (q * a * k1 * y - t2) * (y - a) / a);
    });
  };
  // Second displayed product; scale_q multiplies its last term.
  auto form_b = [&](const Complex& a, const Complex& b, const Complex& cc, const Complex& d, const Complex& scale_q) {
    return coeffs([&](const Complex& xi) {
      return (xi * (y - d) - (q * cc * k1 * y - t2) / (k1 * k2 * cc)) *
             (k1 * k2 * xi * (y - cc) * (cc * y * k2 - q * t1) - scale_q * k1 * k2 * cc * (y - a) * (y - b));
    });
  };
  FactorizationReport r;
  r.residual[0] = gap(lhs(c[0]), form_a(c[0], c[1], c[2], c[3]));
  r.residual[1] = gap(lhs(c[1]), form_a(c[1], c[0], c[2], c[3]));
  r.residual[2] = gap(lhs(c[2]), form_b(c[0], c[1], c[2], c[3], q));
  r.residual[3] = gap(lhs(c[3]), form_b(c[0], c[1], c[3], c[2], q));
  r.printed_i3 = gap(lhs(c[2]), form_b(c[0], c[1], c[2], c[3], Complex(1)));
  const Complex s1 = sp.sigma1(), s3 = sp.sigma3(), mix = q * q * k1 * t1 + k2 * t2;
  r.printed_expanded_i1 = gap(lhs(c[0]), coeffs([&](const Complex& xi) {
    const Complex& c1 = c[0];
    return k1 * k2 * xi * xi * (c1 * y * k2 - q * t1) * (y - c[2]) * (y - c[3]) +
           xi * (Complex(-2) * q * c1 * k1 * k2 * y * y * y + (mix + q * c1 * k1 * k2 * s1) * y * y) +
           xi * ((-(q * k1 * k2 * s3) + c1 * mix) * y + Complex(2) * q * t1 * t2) +
           q * (q * c1 * k1 * y - t2) * (y - c1) * (y - c[1]);
  }));
  return r;
}

std::array<BlownUpPoint, 8> blown_up_points(const SurfaceParams& sp) {
  const auto& c = sp.c;
  const Complex zero(0);
  auto fin = [](const Complex& y, const Complex& xi) { return SurfaceCoords{y, xi, false, false}; };
  auto xinf = [](const Complex& y) { return SurfaceCoords{y, Complex(0), false, true}; };
  auto yinf = [](const Complex& xi) { return SurfaceCoords{Complex(0), xi, true, false}; };
  return {{{"(c1,0)", fin(c[0], zero)},
           {"(c2,0)", fin(c[1], zero)},
           {"(c3,inf)", xinf(c[2])},
           {"(c4,inf)", xinf(c[3])},
           {"(0,c1c2/theta1)", fin(zero, c[0] * c[1] / sp.theta1)},
           {"(0,c1c2/theta2)", fin(zero, c[0] * c[1] / sp.theta2)},
           {"(inf,1/kappa1)", yinf(Complex(1) / sp.kappa1)},
           {"(inf,q/kappa2)", yinf(Complex(sp.q) / sp.kappa2)}}};
}

nlohmann::json to_json(const SurfaceParams& sp) {
  nlohmann::json j;
  j["kappa1"] = complex_json(sp.kappa1);
  j["kappa2"] = complex_json(sp.kappa2);
  j["theta1"] = complex_json(sp.theta1);
  j["theta2"] = complex_json(sp.theta2);
  j["c"] = nlohmann::json::array();
  for (const auto& x : sp.c) j["c"].push_back(complex_json(x));
  j["q"] = to_double(sp.q);
  return j;
}

nlohmann::json to_json(const SurfaceCoords& c) {
  nlohmann::json j;
  j["y"] = c.y_inf ? nlohmann::json("inf") : complex_json(c.y);
  j["xi"] = c.xi_inf ? nlohmann::json("inf") : complex_json(c.xi);
  return j;
}

}  // namespace qpvi
