#include "qpath/qnum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpath {

RootData q_root(int k) {
  if (k < 1) {
    throw std::invalid_argument("k must be >= 1");
  }
  RootData r;
  r.k = k;
  const double theta = std::numbers::pi / (k + 1);
  r.q = std::polar(1.0, theta);
  r.q2 = std::polar(1.0, 2.0 * theta);
  return r;
}

cplx q_pow(const RootData& r, long long e) {
  // q has order 2(k+1); reduce the exponent before touching the angle.
  const long long order = 2LL * (r.k + 1);
  long long m = e % order;
  if (m < 0) m += order;
  return std::polar(1.0, std::numbers::pi * static_cast<double>(m) / (r.k + 1));
}

cplx q_num_sym(int n, const RootData& r) {
  const double s = std::sin(std::numbers::pi / (r.k + 1));
  return cplx(std::sin(n * std::numbers::pi / (r.k + 1)) / s, 0.0);
}

cplx q_num_box(int n, const RootData& r) {
  return (q_pow(r, 2LL * n) - 1.0) / (r.q2 - 1.0);
}

cplx q_factorial_sym(int n, const RootData& r) {
  cplx p = 1.0;
  for (int j = 1; j <= n; ++j) p *= q_num_sym(j, r);
  return p;
}

cplx q_factorial_box(int n, const RootData& r) {
  cplx p = 1.0;
  for (int j = 1; j <= n; ++j) p *= q_num_box(j, r);
  return p;
}

}  // namespace qpath
