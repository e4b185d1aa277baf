#pragma once

#include "qpvi/numeric.hpp"

#include <vector>

namespace qpvi {

class CMatrix {
public:
  CMatrix() = default;
  CMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Complex(0)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Complex& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

using CVector = std::vector<Complex>;

CVector matvec(const CMatrix& a, const CVector& x);

// Square solve by LU with partial pivoting.
CVector lu_solve(CMatrix a, CVector b);

struct LeastSquaresResult {
  CVector x;
  Real residual;  // max |(Ax - b)_i|
};

// Full-column-rank least squares by Householder QR.
LeastSquaresResult least_squares(CMatrix a, CVector b);

}  // namespace qpvi
