#include "qpvi/laxpair.hpp"

#include "qpvi/linalg.hpp"

#include <algorithm>

namespace qpvi {

MatPoly2 build_B(const Complex& alpha_next) {
  return MatPoly2{{CPoly{Complex(0), Complex(1)}, CPoly{alpha_next},
                   CPoly{Complex(0), conj(alpha_next)}, CPoly{Complex(1)}}};
}

namespace {

constexpr int kUnknowns = 13;
// Column offsets: e11 z^0..2, e12 z^0..1, e21 z^1..2, e22 z^0..2, U z^0..2.
constexpr int kE11 = 0, kE12 = 3, kE21 = 5, kE22 = 7, kU = 10;

struct Term {
  int column;
  int shift;
  CPoly poly;
};

void add_identity(std::vector<std::vector<Complex>>& rows, CVector& rhs, const CPoly& lhs,
                  const std::vector<Term>& terms) {
  int len = static_cast<int>(lhs.c.size());
  for (const auto& t : terms) len = std::max(len, t.shift + static_cast<int>(t.poly.c.size()));
  for (int i = 0; i < len; ++i) {
    std::vector<Complex> row(kUnknowns, Complex(0));
    for (const auto& t : terms) row[t.column] += t.poly.coeff(i - t.shift);
    rows.push_back(std::move(row));
    rhs.push_back(lhs.coeff(i));
  }
}

}  // namespace

LaxFit fit_A(const VerblunskyTable& vt, const QWeightParams& p, int n, const Real& tol) {
  if (n < 1 || n + 1 > vt.N()) throw DomainError("fit_A: need 1 <= n < N");
  const Complex an1 = vt.alpha[n + 1];
  if (abs(an1) < pow2(-static_cast<int>(working_precision_bits()) / 2))
    throw DegenerateError("fit_A: alpha_" + std::to_string(n + 1) + " = 0");
  const auto vw = vw_polys(p);
  const Complex q(p.q);
  const CPoly& ph = vt.phi[n];
  const CPoly phs = star(ph, n);
  const CPoly& ps = vt.psi[n];
  const CPoly pss = star(ps, n);
  const CPoly phq = qshift(ph, q), phsq = qshift(phs, q);

  std::vector<std::vector<Complex>> rows;
  CVector rhs;
  std::vector<Term> t1, t2, t3, t4;
  for (int i = 0; i < 3; ++i) {
    t1.push_back({kE11 + i, i, ph});
    t2.push_back({kE22 + i, i, phs});
    t3.push_back({kE11 + i, i, ps});
    t3.push_back({kU + i, i, -phq});
    t4.push_back({kE22 + i, i, -pss});
    t4.push_back({kU + i, i, -phsq});
  }
  for (int i = 0; i < 2; ++i) {
    t1.push_back({kE12 + i, i, phs});
    t2.push_back({kE21 + i, i + 1, ph});
    t3.push_back({kE12 + i, i, -pss});
    t4.push_back({kE21 + i, i + 1, ps});
  }
  add_identity(rows, rhs, vw.V * phq, t1);
  add_identity(rows, rhs, vw.V * phsq, t2);
  add_identity(rows, rhs, vw.W * qshift(ps, q), t3);
  add_identity(rows, rhs, -(vw.W * qshift(pss, q)), t4);

  CMatrix M(rows.size(), kUnknowns);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < kUnknowns; ++j) M(i, j) = rows[i][j];
  auto ls = least_squares(M, rhs);
  const auto& x = ls.x;

  LaxFit fit;
  fit.n = n;
  fit.A.e[0] = CPoly{x[kE11], x[kE11 + 1], x[kE11 + 2]};
  fit.A.e[1] = CPoly{x[kE12], x[kE12 + 1]};
  fit.A.e[2] = CPoly{Complex(0), x[kE21], x[kE21 + 1]};
  fit.A.e[3] = CPoly{x[kE22], x[kE22 + 1], x[kE22 + 2]};
  fit.U = CPoly{x[kU], x[kU + 1], x[kU + 2]};
  fit.residual = ls.residual;
  fit.theta = (Complex(-1) / an1) * fit.A.e[1];
  const Real gate = tol > 0 ? tol : pow2(-static_cast<int>(working_precision_bits()) / 2);
  if (fit.residual > gate)
    throw FitError("fit_A: residual " + to_string(fit.residual, 6) + " at n = " + std::to_string(n));
  return fit;
}

CPoly theta_closed_form(const VerblunskyTable& vt, const QWeightParams& p, int n) {
  const Complex qn = ipow(p.q, n), qn1 = ipow(p.q, n + 1);
  return CPoly{(conj(p.b) * qn - conj(p.a)) * vt.alpha[n] / vt.alpha[n + 1], p.a - p.b * qn1};
}

Real CornerReport::max() const { return std::max({e11_lead, e11_const, e22_lead, e22_const}); }

CornerReport corner_check(const MatPoly2& A, const QWeightParams& p, int n) {
  const Complex qn = ipow(p.q, n), qn1 = ipow(p.q, n + 1);
  return {abs(A.e[0].coeff(2) - p.b * qn1), abs(A.e[0].coeff(0) - conj(p.b) * qn),
          abs(A.e[3].coeff(2) - p.a * Complex(p.q)), abs(A.e[3].coeff(0) - conj(p.a))};
}

LaxQReport check_lax_q(const VerblunskyTable& vt, const QWeightParams& p, int n, const MatPoly2& A,
                       Sampler& rng, int samples, double radius) {
  const auto vw = vw_polys(p);
  const Complex q(p.q);
  const CPoly& ph = vt.phi[n];
  const CPoly phs = star(ph, n);
  LaxQReport r;
  r.phi_identity = max_abs_coeff(vw.V * qshift(ph, q) - A.e[0] * ph - A.e[1] * phs);
  r.phi_star_identity = max_abs_coeff(vw.V * qshift(phs, q) - A.e[2] * ph - A.e[3] * phs);

  // Y column (eps_n / w, -eps*_n / w) obeys Y(qz) = A Y / V.
  const int nodes = std::max(4 * n + 64, static_cast<int>(p.prec) + 64);
  const CircleQuadrature cq = circle_quadrature(p, nodes);
  r.eps_identity = 0;
  r.eps_star_identity = 0;
  for (int i = 0; i < samples; ++i) {
    const Complex z = rng.on_circle(radius);
    const Complex qz = q * z;
    const Complex wz = weight_eval(p, z), wqz = weight_eval(p, qz);
    const Complex e = epsilon_eval(ph, cq, z), es = epsilon_star_eval(ph, n, cq, z);
    const Complex eq = epsilon_eval(ph, cq, qz), esq = epsilon_star_eval(ph, n, cq, qz);
    const auto Az = A(z);
    const Complex l1 = vw.V(z) * eq / wqz, r1 = (Az[0] * e - Az[1] * es) / wz;
    const Complex l2 = -(vw.V(z) * esq / wqz), r2 = (Az[2] * e - Az[3] * es) / wz;
    r.eps_identity = std::max(r.eps_identity, rel_diff(l1, r1));
    r.eps_star_identity = std::max(r.eps_star_identity, rel_diff(l2, r2));
  }
  return r;
}

Real check_compat(const MatPoly2& A_n, const MatPoly2& A_next, const MatPoly2& B_n, const Real& q) {
  return max_abs_coeff(A_next * B_n - qshift(B_n, Complex(q)) * A_n);
}

DetLawReport det_law(const MatPoly2& A, const QWeightParams& p, int n) {
  const auto vw = vw_polys(p);
  const CPoly VW = vw.V * vw.W;
  const CPoly det = A.det();
  // Least-squares constant over all coefficients.
  Complex num(0);
  Real den(0);
  for (int k = 0; k < static_cast<int>(VW.c.size()); ++k) {
    num += det.coeff(k) * conj(VW.c[k]);
    den += norm2(VW.c[k]);
  }
  DetLawReport r;
  r.constant = num / Complex(den);
  r.constancy = max_abs_coeff(det - r.constant * VW) / std::max(max_abs_coeff(det), Real(1e-300));
  const Real qn = boost::multiprecision::pow(p.q, n);
  r.modulus_error = boost::multiprecision::abs(abs(r.constant) - qn);
  const Real tol = qn * Real(1e-6);
  if (abs(r.constant - Complex(qn)) < tol) r.sign = 1;
  else if (abs(r.constant + Complex(qn)) < tol) r.sign = -1;
  return r;
}

nlohmann::json to_json(const MatPoly2& m) {
  nlohmann::json j;
  const char* names[4] = {"e11", "e12", "e21", "e22"};
  for (int i = 0; i < 4; ++i) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : m.e[i].c) c.push_back(complex_json(x));
    j[names[i]] = c;
  }
  return j;
}

}  // namespace qpvi
