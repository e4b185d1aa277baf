#include "qpvi/qseries.hpp"
#include "qpvi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpvi {

void QWeightParams::validate() const {
  if (!(q > 0 && q < 1)) throw ConfigError("q must lie in (0,1), got " + to_string(q));
  if (!(abs(a) < 1)) throw ConfigError("|a| must be < 1 for a positive weight, got |a| = " + to_string(abs(a)));
  if (!(abs(b) < 1)) throw ConfigError("|b| must be < 1 for a pole-free weight, got |b| = " + to_string(abs(b)));
  if (prec < 53) throw ConfigError("precision must be at least 53 bits");
  if (trunc_tol < 0) throw ConfigError("trunc_tol must be positive");
}

QWeightParams QWeightParams::promoted() const {
  return QWeightParams{promote(a), promote(b), promote(q), prec, promote(trunc_tol)};
}

Real QWeightParams::truncation_tol() const {
  return trunc_tol > 0 ? trunc_tol : pow2(-static_cast<int>(prec) - 16);
}

Complex qpoch_inf(const Complex& z, const Real& q, const Real& tol) {
  Complex prod(1);
  Complex term = z;  // z q^i
  Real az = abs(z);
  Real qi(1);
  for (;;) {
    prod *= Complex(1) - term;
    if (az * qi < tol) break;
    term *= Complex(q);
    qi *= q;
  }
  // term = z q^M here; the remaining factors contribute exp(-z q^(M+1)/(1-q)) to first order.
  return prod * exp(-(term * Complex(q)) / Complex(Real(1) - q));
}

namespace {

void check_pole_factor(const Complex& x, const Real& q, const Real& guard, const char* what) {
  // x q^i == 1 for some i >= 0 means the Pochhammer factor vanishes.
  Real ax = abs(x);
  Complex t = x;
  Real qi(1);
  while (ax * qi >= Real(0.5)) {
    if (abs(Complex(1) - t) < guard) throw PoleError(std::string("weight pole at ") + what);
    t *= Complex(q);
    qi *= q;
  }
}

}  // namespace

Complex weight_eval(const QWeightParams& p, const Complex& z) {
  if (z.re == 0 && z.im == 0) throw DomainError("weight_eval: z = 0");
  const Real tol = p.truncation_tol();
  const Real guard = pow2(-static_cast<int>(p.prec) / 2);
  const Complex bz = p.b * z;
  const Complex bbar_over_z = conj(p.b) / z;
  check_pole_factor(bz, p.q, guard, "z = q^-k / b");
  check_pole_factor(bbar_over_z, p.q, guard, "z = conj(b) q^k");
  const Complex num = qpoch_inf(p.a * z, p.q, tol) * qpoch_inf(conj(p.a) / z, p.q, tol);
  const Complex den = qpoch_inf(bz, p.q, tol) * qpoch_inf(bbar_over_z, p.q, tol);
  return num / den;
}

VWPolys vw_polys(const QWeightParams& p) {
  const Complex q(p.q);
  CPoly V = CPoly{-conj(p.a), q} * CPoly{Complex(-1), p.b};
  CPoly W = CPoly{-conj(p.b), q} * CPoly{Complex(-1), p.a};
  return {V, W};
}

Complex rho_eval(const QWeightParams& p, const Complex& z) {
  auto vw = vw_polys(p);
  return vw.V(z) / vw.W(z);
}

MomentTable moments(const QWeightParams& p, int K, int nodes, bool normalize, const Real& tol) {
  if (K < 0) throw DomainError("moments: K must be >= 0");
  const int prec = static_cast<int>(p.prec);
  if (nodes == 0) {
    // Aliasing error of c_k behaves like r^(N - k), r the annulus radius of analyticity.
    double r = std::max({abs(p.a).convert_to<double>(), abs(p.b).convert_to<double>(), 1e-3});
    int need = static_cast<int>(std::ceil((prec + 24) / std::log2(1.0 / r))) + K;
    nodes = std::max(4 * K + 16, need);
  }
  if (nodes < 4 * K + 16) throw DomainError("moments: need at least 4K+16 quadrature nodes");

  const int fine = 2 * nodes;
  const Real two_pi = 2 * pi();
  std::vector<Complex> roots(fine);  // e^{2 pi i j / fine}
  std::vector<Real> w(fine);
  for (int j = 0; j < fine; ++j) {
    roots[j] = polar(Real(1), two_pi * j / fine);
    w[j] = weight_eval(p, roots[j]).re;
  }
  auto quad = [&](int k, int stride) {
    const int n = fine / stride;
    Complex s(0);
    for (int j = 0; j < n; ++j) {
      long idx = (static_cast<long>(k) * j) % n;
      s += Complex(w[j * stride]) * conj(roots[idx * stride]);
    }
    return s * Complex(two_pi / n);
  };

  MomentTable t;
  t.K = K;
  t.nodes = nodes;
  t.c.assign(2 * K + 1, Complex(0));
  t.quadrature_error = 0;
  std::vector<Complex> coarse(K + 1);
  for (int k = 0; k <= K; ++k) {
    coarse[k] = quad(k, 2);
    Complex f = quad(k, 1);
    t.quadrature_error = std::max(t.quadrature_error, abs(f - coarse[k]));
  }
  t.mass = Complex(coarse[0].re);
  Complex scale = normalize ? Complex(1) / t.mass : Complex(1);
  for (int k = 0; k <= K; ++k) {
    Complex ck = k == 0 ? t.mass * scale : coarse[k] * scale;
    t.c[K + k] = ck;
    t.c[K - k] = conj(ck);
  }
  if (normalize) t.c[K] = Complex(1);
  t.c0_normalized = normalize;
  if (normalize) t.quadrature_error /= abs(t.mass);
  const Real gate = tol > 0 ? tol : pow2(-prec + 24);
  if (t.quadrature_error > gate)
    throw PrecisionError("moments: node doubling changed a moment by " + to_string(t.quadrature_error, 6));
  return t;
}

CaratheodoryValue caratheodory_eval(const QWeightParams& p, const MomentTable& table,
                                    const Complex& z, const Real& tol) {
  Real az = abs(z);
  if (!(az < 1)) throw DomainError("caratheodory_eval: |z| must be < 1");
  const int K = table.K;
  Complex s(0);
  for (int k = K; k >= 1; --k) s = (s + table.at(k)) * z;
  Complex value = table.at(0) + Complex(2) * s;

  // Moments decay like rho^k with rho the inner singularity radius of w.
  Real rho = std::max(abs(p.a), abs(p.b));
  if (K >= 2 && abs(table.at(K - 1)) > 0) rho = std::max(rho, abs(table.at(K)) / abs(table.at(K - 1)));
  Real x = rho * az;
  Real tail = x < 1 ? 2 * abs(table.at(K)) * boost::multiprecision::pow(az, K) * x / (1 - x)
                    : Real(std::numeric_limits<double>::infinity());
  const Real gate = tol > 0 ? tol : pow2(-static_cast<int>(p.prec) + 24);
  if (tail > gate) throw ConvergenceError("caratheodory_eval: series tail " + to_string(tail, 6) + " exceeds tolerance");
  return {value, tail};
}

Complex fplus_eval(const QWeightParams& p, const Real& theta) {
  const Complex e = polar(Real(1), theta);
  const Real tol = p.truncation_tol();
  return qpoch_inf(p.b * e, p.q, tol) / qpoch_inf(p.a * e, p.q, tol);
}

CaratheodoryFit fit_caratheodory_U(const QWeightParams& p, const MomentTable& table, Sampler& rng,
                                   int checks, double r) {
  auto vw = vw_polys(p);
  const Complex q(p.q);
  auto lhs = [&](const Complex& z) {
    Complex Fz = caratheodory_eval(p, table, z).value;
    Complex Fqz = caratheodory_eval(p, table, q * z).value;
    return std::pair{vw.W(z) * Fqz - vw.V(z) * Fz, vw.W(z) * Fqz};
  };
  CaratheodoryFit fit;
  CMatrix M(3, 3);
  CVector rhs(3);
  for (int i = 0; i < 3; ++i) {
    Complex z = rng.on_circle(r);
    fit.fit_points.push_back(z);
    M(i, 0) = Complex(1);
    M(i, 1) = z;
    M(i, 2) = z * z;
    rhs[i] = lhs(z).first;
  }
  CVector u = lu_solve(M, rhs);
  fit.U = CPoly(u);
  fit.max_residual = 0;
  for (int i = 0; i < checks; ++i) {
    Complex z = rng.uniform_disc(0.05, r);
    auto [val, scale] = lhs(z);
    Real s = std::max(abs(scale), Real(1));
    fit.max_residual = std::max(fit.max_residual, abs(val - fit.U(z)) / s);
  }
  return fit;
}

CircleQuadrature circle_quadrature(const QWeightParams& p, int nodes) {
  CircleQuadrature cq;
  const Real two_pi = 2 * pi();
  Real mass(0);
  for (int j = 0; j < nodes; ++j) {
    cq.nodes.push_back(polar(Real(1), two_pi * j / nodes));
    cq.weights.push_back(weight_eval(p, cq.nodes.back()).re);
    mass += cq.weights.back();
  }
  for (auto& w : cq.weights) w /= mass;
  return cq;
}

nlohmann::json complex_json(const Complex& z) { return nlohmann::json::array({to_double(z.re), to_double(z.im)}); }

nlohmann::json to_json(const MomentTable& t, const QWeightParams& p) {
  nlohmann::json j;
  j["q"] = to_double(p.q);
  j["a"] = complex_json(p.a);
  j["b"] = complex_json(p.b);
  j["K"] = t.K;
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : t.c) c.push_back(complex_json(x));
  j["c"] = c;
  j["c0_normalized"] = t.c0_normalized;
  j["mass"] = complex_json(t.mass);
  j["nodes"] = t.nodes;
  j["quadrature_error"] = to_double(t.quadrature_error);
  return j;
}

}  // namespace qpvi
