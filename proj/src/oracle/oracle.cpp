#include "qpvi/oracle.hpp"

#include "qpvi/linalg.hpp"

namespace qpvi::oracle {

std::vector<Complex> toeplitz_alpha(const MomentTable& t, int N) {
  if (t.K < N) throw DomainError("toeplitz_alpha: moment table too short");
  std::vector<Complex> alpha{Complex(1)};
  for (int n = 1; n <= N; ++n) {
    // <phi_n, z^m> = sum_j x_j c_{m-j} = 0 for m < n, with x_n = 1.
    CMatrix M(n, n);
    CVector rhs(n);
    for (int m = 0; m < n; ++m) {
      for (int j = 0; j < n; ++j) M(m, j) = t.at(m - j);
      rhs[m] = -t.at(m - n);
    }
    alpha.push_back(lu_solve(M, rhs)[0]);
  }
  return alpha;
}

Complex qpoch_log_series(const Complex& z, const Real& q, const Real& tol) {
  Complex s(0);
  Complex term = z;
  for (int i = 0; i < 100000; ++i) {
    s += log(Complex(1) - term);
    if (abs(term) < tol) break;
    term *= Complex(q);
  }
  return exp(s);
}

}  // namespace qpvi::oracle
