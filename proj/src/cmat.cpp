#include "qpath/cmat.hpp"

#include <cmath>
#include <stdexcept>

namespace qpath {

CMat CMat::operator+(const CMat& o) const {
  CMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

CMat CMat::operator-(const CMat& o) const {
  CMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

CMat CMat::operator*(const CMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
  CMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int l = 0; l < cols_; ++l) {
      const cplx aij = (*this)(i, l);
      if (aij == cplx{}) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aij * o(l, j);
    }
  }
  return r;
}

CMat CMat::operator*(cplx s) const {
  CMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
  return r;
}

CMat CMat::adjoint() const {
  CMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::pow(int e) const {
  CMat r = CMat::identity(rows_);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool CMat::is_diagonal(double tol) const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (i != j && std::abs((*this)(i, j)) > tol) return false;
  return true;
}

CMat mat_exp(const CMat& a) {
  const int n = a.rows();
  if (a.is_diagonal(1e-14)) {
    CMat r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = std::exp(a(i, i));
    return r;
  }
  // Scale so the Taylor series converges fast, then square back.
  int s = 0;
  double norm = a.max_abs() * n;
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  CMat x = a * cplx(std::ldexp(1.0, -s), 0.0);
  CMat sum = CMat::identity(n);
  CMat term = CMat::identity(n);
  bool converged = false;
  for (int j = 1; j <= 64; ++j) {
    term = term * x * cplx(1.0 / j, 0.0);
    sum = sum + term;
    if (term.max_abs() < 1e-18) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("matrix exponential did not converge");
  for (int j = 0; j < s; ++j) sum = sum * sum;
  return sum;
}

}  // namespace qpath
