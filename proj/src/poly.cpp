#include "qpvi/poly.hpp"

#include <algorithm>

namespace qpvi {

CPoly CPoly::monomial(int k, const Complex& coef) {
  CPoly p;
  p.c.assign(k + 1, Complex(0));
  p.c[k] = coef;
  return p;
}

CPoly CPoly::from_roots(const std::vector<Complex>& roots, const Complex& lead) {
  CPoly p{lead};
  for (const auto& r : roots) p = p * CPoly{-r, Complex(1)};
  return p;
}

int CPoly::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (!(c[k].re == 0 && c[k].im == 0)) return k;
  return -1;
}

Complex CPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c.size())) return Complex(0);
  return c[k];
}

Complex CPoly::operator()(const Complex& z) const {
  Complex s(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

CPoly& CPoly::trim(const Real& tol) {
  while (!c.empty() && abs(c.back()) <= tol) c.pop_back();
  return *this;
}

CPoly operator+(const CPoly& a, const CPoly& b) {
  CPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
  return r;
}

CPoly operator-(const CPoly& a, const CPoly& b) {
  CPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
  return r;
}

CPoly operator-(const CPoly& a) {
  CPoly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.c.empty() || b.c.empty()) return CPoly{};
  CPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Complex(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

CPoly operator*(const Complex& s, const CPoly& p) {
  CPoly r = p;
  for (auto& x : r.c) x *= s;
  return r;
}

CPoly qshift(const CPoly& p, const Complex& q) {
  CPoly r = p;
  Complex qk(1);
  for (auto& x : r.c) {
    x *= qk;
    qk *= q;
  }
  return r;
}

CPoly zshift(const CPoly& p, int k) {
  CPoly r;
  r.c.assign(k, Complex(0));
  r.c.insert(r.c.end(), p.c.begin(), p.c.end());
  return r;
}

Real max_abs_coeff(const CPoly& p) {
  Real m(0);
  for (const auto& x : p.c) m = std::max(m, abs(x));
  return m;
}

std::pair<CPoly, CPoly> divmod(const CPoly& p, const CPoly& d) {
  int dd = d.degree();
  if (dd < 0) throw DomainError("polynomial division by zero");
  CPoly rem = p;
  int dp = rem.degree();
  CPoly quo;
  quo.c.assign(std::max(dp - dd + 1, 1), Complex(0));
  const Complex lead = d.c[dd];
  for (int k = dp; k >= dd; --k) {
    Complex f = rem.c[k] / lead;
    quo.c[k - dd] = f;
    for (int j = 0; j <= dd; ++j) rem.c[k - dd + j] -= f * d.c[j];
  }
  rem.c.resize(std::max(dd, 0));
  return {quo, rem};
}

CPoly MatPoly2::det() const { return e[0] * e[3] - e[1] * e[2]; }

std::array<Complex, 4> MatPoly2::operator()(const Complex& z) const {
  return {e[0](z), e[1](z), e[2](z), e[3](z)};
}

MatPoly2 operator*(const MatPoly2& a, const MatPoly2& b) {
  return MatPoly2{{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
                   a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

MatPoly2 operator-(const MatPoly2& a, const MatPoly2& b) {
  return MatPoly2{{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}

MatPoly2 operator*(const Complex& s, const MatPoly2& m) {
  return MatPoly2{{s * m.e[0], s * m.e[1], s * m.e[2], s * m.e[3]}};
}

MatPoly2 qshift(const MatPoly2& m, const Complex& q) {
  return MatPoly2{{qshift(m.e[0], q), qshift(m.e[1], q), qshift(m.e[2], q), qshift(m.e[3], q)}};
}

Real max_abs_coeff(const MatPoly2& m) {
  Real r(0);
  for (const auto& p : m.e) r = std::max(r, max_abs_coeff(p));
  return r;
}

int max_degree(const MatPoly2& m) {
  int d = -1;
  for (const auto& p : m.e) d = std::max(d, p.degree());
  return d;
}

}  // namespace qpvi
