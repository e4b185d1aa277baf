#pragma once

#include "qpvi/numeric.hpp"

#include <array>
#include <vector>

namespace qpvi {

// Complex polynomial, coefficients lowest degree first. Trailing zeros are
// kept unless trim() is called, so exact-degree bookkeeping stays explicit.
struct CPoly {
  std::vector<Complex> c;

  CPoly() = default;
  explicit CPoly(std::vector<Complex> coeffs) : c(std::move(coeffs)) {}
  CPoly(std::initializer_list<Complex> coeffs) : c(coeffs) {}

  static CPoly monomial(int k, const Complex& coef = Complex(1));
  static CPoly from_roots(const std::vector<Complex>& roots, const Complex& lead = Complex(1));

  int degree() const;  // -1 for the zero polynomial
  Complex coeff(int k) const;
  Complex operator()(const Complex& z) const;
  CPoly& trim(const Real& tol = Real(0));
};

CPoly operator+(const CPoly& a, const CPoly& b);
CPoly operator-(const CPoly& a, const CPoly& b);
CPoly operator-(const CPoly& a);
CPoly operator*(const CPoly& a, const CPoly& b);
CPoly operator*(const Complex& s, const CPoly& p);

// p(q z)
CPoly qshift(const CPoly& p, const Complex& q);
// z^k p(z)
CPoly zshift(const CPoly& p, int k);
Real max_abs_coeff(const CPoly& p);

// Quotient and remainder of p by d (d with nonzero leading coefficient).
std::pair<CPoly, CPoly> divmod(const CPoly& p, const CPoly& d);

// 2x2 matrix of polynomials, entries e[0]=11, e[1]=12, e[2]=21, e[3]=22.
struct MatPoly2 {
  std::array<CPoly, 4> e;

  const CPoly& e11() const { return e[0]; }
  const CPoly& e12() const { return e[1]; }
  const CPoly& e21() const { return e[2]; }
  const CPoly& e22() const { return e[3]; }

  CPoly det() const;
  std::array<Complex, 4> operator()(const Complex& z) const;
};

MatPoly2 operator*(const MatPoly2& a, const MatPoly2& b);
MatPoly2 operator-(const MatPoly2& a, const MatPoly2& b);
MatPoly2 operator*(const Complex& s, const MatPoly2& m);
MatPoly2 qshift(const MatPoly2& m, const Complex& q);
Real max_abs_coeff(const MatPoly2& m);
int max_degree(const MatPoly2& m);

}  // namespace qpvi
