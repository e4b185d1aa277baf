#include "qpvi/opuc.hpp"

#include <algorithm>
#include <sstream>

namespace qpvi {

CPoly star(const CPoly& p, int n) {
  if (p.degree() > n) throw DegreeError("star: degree exceeds n");
  CPoly r;
  r.c.resize(n + 1);
  for (int k = 0; k <= n; ++k) r.c[k] = conj(p.coeff(n - k));
  return r;
}

Complex inner(const CPoly& p, const CPoly& r, const MomentTable& t) {
  Complex s(0);
  for (int j = 0; j < static_cast<int>(p.c.size()); ++j) {
    if (p.c[j].re == 0 && p.c[j].im == 0) continue;
    for (int k = 0; k < static_cast<int>(r.c.size()); ++k) s += p.c[j] * conj(r.c[k]) * t.at(k - j);
  }
  return s;
}

VerblunskyTable verblunsky_from_moments(const MomentTable& t, int N, const Real& tol) {
  if (!t.c0_normalized) throw DomainError("verblunsky_from_moments: moments must be normalized");
  if (t.K < N) throw DomainError("verblunsky_from_moments: moment table too short");
  const Real gate = tol > 0 ? tol : pow2(-static_cast<int>(working_precision_bits()) / 2);
  VerblunskyTable vt;
  vt.alpha = {Complex(1)};
  vt.sigma = {Real(1)};
  vt.phi = {CPoly{Complex(1)}};
  vt.psi = {CPoly{Complex(1)}};
  for (int n = 0; n < N; ++n) {
    const CPoly zphi = zshift(vt.phi[n], 1);
    Complex a = -inner(zphi, CPoly{Complex(1)}, t) / Complex(vt.sigma[n]);
    if (!(abs(a) < 1 - gate))
      throw SingularMeasureError("verblunsky_from_moments: |alpha_" + std::to_string(n + 1) + "| >= 1");
    vt.alpha.push_back(a);
    vt.sigma.push_back(vt.sigma[n] * (1 - norm2(a)));
    vt.phi.push_back(zphi + a * star(vt.phi[n], n));
    vt.psi.push_back(zshift(vt.psi[n], 1) - a * star(vt.psi[n], n));
  }
  return vt;
}

OrthogonalityReport check_orthogonality(const VerblunskyTable& vt, const MomentTable& t) {
  OrthogonalityReport r;
  for (int n = 0; n <= vt.N(); ++n) {
    Real orth(0);
    for (int m = 0; m < n; ++m) orth = std::max(orth, abs(inner(vt.phi[n], CPoly::monomial(m), t)));
    Real nrm = abs(inner(vt.phi[n], vt.phi[n], t) - Complex(vt.sigma[n]));
    r.per_n_orth.push_back(orth);
    r.per_n_norm.push_back(nrm);
    r.max_orth = std::max(r.max_orth, orth);
    r.max_norm = std::max(r.max_norm, nrm);
  }
  return r;
}

WronskianReport wronskian_check(const VerblunskyTable& vt) {
  WronskianReport r;
  for (int n = 0; n <= vt.N(); ++n) {
    const CPoly phis = star(vt.phi[n], n), psis = star(vt.psi[n], n);
    const Complex sig(vt.sigma[n]);
    Real w3 = max_abs_coeff(vt.phi[n] * psis + vt.psi[n] * phis - CPoly::monomial(n, Complex(2) * sig));
    r.phi_star_psi.push_back(w3);
    r.max_residual = std::max(r.max_residual, w3);
    if (n == vt.N()) break;
    const Complex a = vt.alpha[n + 1];
    Real w1 = max_abs_coeff(vt.phi[n + 1] * vt.psi[n] - vt.psi[n + 1] * vt.phi[n] -
                            CPoly::monomial(n, Complex(2) * a * sig));
    const CPoly phis1 = star(vt.phi[n + 1], n + 1), psis1 = star(vt.psi[n + 1], n + 1);
    Real w2 = max_abs_coeff(phis1 * psis - psis1 * phis - CPoly::monomial(n + 1, Complex(2) * conj(a) * sig));
    r.phi_psi.push_back(w1);
    r.phi_psi_star.push_back(w2);
    r.max_residual = std::max({r.max_residual, w1, w2});
  }
  return r;
}

Real szego_star_residual(const VerblunskyTable& vt) {
  Real r(0);
  for (int n = 0; n < vt.N(); ++n) {
    CPoly lhs = star(vt.phi[n + 1], n + 1);
    CPoly rhs = star(vt.phi[n], n) + conj(vt.alpha[n + 1]) * zshift(vt.phi[n], 1);
    r = std::max(r, max_abs_coeff(lhs - rhs));
  }
  return r;
}

Complex epsilon_eval(const CPoly& phi_n, const CircleQuadrature& cq, const Complex& z) {
  Complex s(0);
  for (size_t j = 0; j < cq.nodes.size(); ++j) {
    const Complex& e = cq.nodes[j];
    s += (e + z) / (e - z) * phi_n(e) * Complex(cq.weights[j]);
  }
  return s;
}

Complex epsilon_star_eval(const CPoly& phi_n, int n, const CircleQuadrature& cq, const Complex& z) {
  Complex s(0);
  for (size_t j = 0; j < cq.nodes.size(); ++j) {
    const Complex& e = cq.nodes[j];
    s += (e + z) / (e - z) * conj(phi_n(e)) * Complex(cq.weights[j]);
  }
  // Sign fixed by eps*_n = psi*_n - F phi*_n.
  return -(s * pow(z, n));
}

EpsilonReport epsilon_asymptotics_check(const VerblunskyTable& vt, const QWeightParams& p, int n,
                                        double r_small, double r_large) {
  if (n < 1 || n >= vt.N()) throw DomainError("epsilon_asymptotics_check: need 1 <= n < N");
  const int nodes = std::max(4 * n + 64, static_cast<int>(p.prec) + 64);
  const CircleQuadrature cq = circle_quadrature(p, nodes);
  const CircleQuadrature cq2 = circle_quadrature(p, 2 * nodes);
  const Complex zs = polar(Real(r_small), Real(0.7));
  const Complex zl = polar(Real(r_large), Real(0.7));
  const Complex sig(vt.sigma[n]);
  Complex es = epsilon_eval(vt.phi[n], cq, zs);
  if (abs(es - epsilon_eval(vt.phi[n], cq2, zs)) > abs(es) * pow2(-static_cast<int>(p.prec) / 2))
    throw PrecisionError("epsilon_asymptotics_check: quadrature did not converge");
  EpsilonReport r;
  r.small_radius = r_small;
  r.large_radius = r_large;
  r.small_z = abs(es / (Complex(2) * sig * pow(zs, n)) - Complex(1));
  r.large_z = abs(zl * epsilon_eval(vt.phi[n], cq, zl) - Complex(2) * sig * vt.alpha[n + 1]);
  r.star_large_z = abs(epsilon_star_eval(vt.phi[n], n, cq, zl) - Complex(2) * sig);
  return r;
}

nlohmann::json to_json(const VerblunskyTable& vt) {
  nlohmann::json j;
  j["N"] = vt.N();
  nlohmann::json a = nlohmann::json::array(), s = nlohmann::json::array(), ph = nlohmann::json::array();
  for (const auto& x : vt.alpha) a.push_back(complex_json(x));
  for (const auto& x : vt.sigma) s.push_back(to_double(x));
  for (const auto& p : vt.phi) {
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& x : p.c) cj.push_back(complex_json(x));
    ph.push_back(cj);
  }
  j["alpha"] = a;
  j["sigma"] = s;
  j["phi"] = ph;
  return j;
}

std::string to_csv(const VerblunskyTable& vt) {
  std::ostringstream os;
  os << "n,re_alpha,im_alpha,sigma\n";
  for (int n = 0; n <= vt.N(); ++n)
    os << n << ',' << to_string(vt.alpha[n].re, 25) << ',' << to_string(vt.alpha[n].im, 25) << ','
       << to_string(vt.sigma[n], 25) << '\n';
  return os.str();
}

}  // namespace qpvi
