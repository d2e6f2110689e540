#pragma once

// Small dense complex matrix.  Every matrix in this project is at most
// (k+1) x (k+1) with k <= ~12, so a flat row-major buffer is all we need.

#include <complex>
#include <vector>

namespace qpath {

using cplx = std::complex<double>;

class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat diagonal(const std::vector<cplx>& d) {
    CMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat operator*(const CMat& o) const;
  CMat operator*(cplx s) const;

  CMat adjoint() const;
  CMat pow(int e) const;  // nonnegative integer power

  // Largest entry magnitude; zero for empty matrices.
  double max_abs() const;

  bool is_diagonal(double tol) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

inline CMat operator*(cplx s, const CMat& m) { return m * s; }

// Matrix exponential exp(A).  Diagonal matrices are exponentiated entrywise;
// otherwise scaling-and-squaring with a Taylor series.  Throws
// std::runtime_error if the series fails to converge.
CMat mat_exp(const CMat& a);

}  // namespace qpath
