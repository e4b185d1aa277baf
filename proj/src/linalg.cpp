#include "qpvi/linalg.hpp"

#include <algorithm>

namespace qpvi {

CVector matvec(const CMatrix& a, const CVector& x) {
  CVector y(a.rows(), Complex(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

CVector lu_solve(CMatrix a, CVector b) {
  const size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("lu_solve: shape mismatch");
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    Real best = abs(a(k, k));
    for (size_t i = k + 1; i < n; ++i) {
      Real v = abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0) throw SingularMatrixError("lu_solve: singular matrix");
    if (p != k) {
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (size_t i = k + 1; i < n; ++i) {
      Complex f = a(i, k) / a(k, k);
      if (f.re == 0 && f.im == 0) continue;
      for (size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  CVector x(n);
  for (size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

LeastSquaresResult least_squares(CMatrix a, CVector b) {
  const size_t m = a.rows(), n = a.cols();
  if (m < n || b.size() != m) throw DomainError("least_squares: need rows >= cols");
  const CMatrix a0 = a;
  const CVector b0 = b;
  for (size_t k = 0; k < n; ++k) {
    Real sigma(0);
    for (size_t i = k; i < m; ++i) sigma += norm2(a(i, k));
    Real alpha_abs = boost::multiprecision::sqrt(sigma);
    if (alpha_abs == 0) throw SingularMatrixError("least_squares: rank deficient");
    Real akk_abs = abs(a(k, k));
    Complex phase = akk_abs == 0 ? Complex(1) : a(k, k) / Complex(akk_abs);
    Complex alpha = -phase * Complex(alpha_abs);
    std::vector<Complex> v(m - k);
    for (size_t i = k; i < m; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    Real vnorm2(0);
    for (const auto& x : v) vnorm2 += norm2(x);
    if (vnorm2 == 0) continue;
    // H = I - 2 v v^H / (v^H v), applied to the trailing block and b.
    for (size_t j = k; j < n; ++j) {
      Complex s(0);
      for (size_t i = k; i < m; ++i) s += conj(v[i - k]) * a(i, j);
      s *= Complex(Real(2) / vnorm2);
      for (size_t i = k; i < m; ++i) a(i, j) -= v[i - k] * s;
    }
    Complex s(0);
    for (size_t i = k; i < m; ++i) s += conj(v[i - k]) * b[i];
    s *= Complex(Real(2) / vnorm2);
    for (size_t i = k; i < m; ++i) b[i] -= v[i - k] * s;
  }
  CVector x(n);
  for (size_t i = n; i-- > 0;) {
    if (abs(a(i, i)) == 0) throw SingularMatrixError("least_squares: rank deficient");
    Complex s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  CVector r = matvec(a0, x);
  Real res(0);
  for (size_t i = 0; i < m; ++i) res = std::max(res, abs(r[i] - b0[i]));
  return {x, res};
}

}  // namespace qpvi
