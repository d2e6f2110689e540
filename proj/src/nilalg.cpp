#include "qpath/nilalg.hpp"

#include <cmath>
#include <stdexcept>

#include "qpath/format.hpp"

namespace qpath {

namespace {

int total_z(const NilPoly::ExpKey& key) {
  int t = 0;
  for (const auto& e : key) t += e.second;
  return t;
}

int total_zbar(const NilPoly::ExpKey& key) {
  int t = 0;
  for (const auto& e : key) t += e.first;
  return t;
}

}  // namespace

NilPoly::NilPoly(SliceAlgebra algebra, int num_slices)
    : algebra_(algebra), num_slices_(num_slices) {
  if (num_slices < 0 || num_slices > kMaxSlices) {
    throw std::invalid_argument("slice count out of range");
  }
}

NilPoly NilPoly::constant(const SliceAlgebra& algebra, int num_slices, cplx value) {
  NilPoly p(algebra, num_slices);
  p.add_term(ExpKey(num_slices, {0, 0}), value);
  return p;
}

NilPoly NilPoly::monomial(const SliceAlgebra& algebra, int num_slices, const ExpKey& key,
                          cplx coeff) {
  NilPoly p(algebra, num_slices);
  p.add_term(key, coeff);
  return p;
}

NilPoly NilPoly::variable(const SliceAlgebra& algebra, int num_slices, int slice,
                          bool conjugated) {
  ExpKey key(num_slices, {0, 0});
  if (conjugated) {
    key[slice].first = 1;
  } else {
    key[slice].second = 1;
  }
  return monomial(algebra, num_slices, key, 1.0);
}

void NilPoly::add_term(const ExpKey& key, cplx coeff) {
  if (static_cast<int>(key.size()) != num_slices_) {
    throw std::invalid_argument("exponent key has wrong slice count");
  }
  for (const auto& e : key) {
    if (e.first < 0 || e.second < 0) throw std::invalid_argument("negative exponent");
    if (e.first > algebra_.root.k || e.second > algebra_.root.k) return;  // nilpotent
  }
  cplx& slot = terms_[key];
  slot += coeff;
  if (std::abs(slot) <= kPruneThreshold) terms_.erase(key);
}

cplx NilPoly::coeff(const ExpKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? cplx{} : it->second;
}

cplx NilPoly::constant_term() const { return coeff(ExpKey(num_slices_, {0, 0})); }

NilPoly NilPoly::operator+(const NilPoly& o) const {
  NilPoly r = *this;
  r += o;
  return r;
}

NilPoly& NilPoly::operator+=(const NilPoly& o) {
  if (!algebra_.compatible(o.algebra_) || num_slices_ != o.num_slices_) {
    throw std::invalid_argument("algebra mismatch");
  }
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

NilPoly NilPoly::operator-(const NilPoly& o) const { return *this + o * cplx(-1.0); }

NilPoly NilPoly::operator*(cplx s) const {
  NilPoly r(algebra_, num_slices_);
  if (s == cplx{}) return r;
  for (const auto& [key, c] : terms_) r.add_term(key, c * s);
  return r;
}

double NilPoly::max_abs_diff(const NilPoly& o) const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c - o.coeff(key)));
  for (const auto& [key, c] : o.terms_) m = std::max(m, std::abs(coeff(key) - c));
  return m;
}

double NilPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

NilPoly NilPoly::conjugated() const {
  NilPoly r(algebra_, num_slices_);
  for (const auto& [key, c] : terms_) {
    ExpKey swapped = key;
    for (auto& [mb, nz] : swapped) std::swap(mb, nz);
    r.add_term(swapped, std::conj(c));
  }
  return r;
}

NilPoly NilPoly::remap_slices(int new_num_slices, const std::vector<int>& slice_of_old) const {
  NilPoly r(algebra_, new_num_slices);
  for (const auto& [key, c] : terms_) {
    ExpKey mapped(new_num_slices, {0, 0});
    for (int i = 0; i < num_slices_; ++i) {
      mapped[slice_of_old[i]].first += key[i].first;
      mapped[slice_of_old[i]].second += key[i].second;
    }
    r.add_term(mapped, c);
  }
  return r;
}

NilPoly nil_mul(const NilPoly& p, const NilPoly& q) {
  if (!p.algebra().compatible(q.algebra()) || p.num_slices() != q.num_slices()) {
    throw std::invalid_argument("algebra mismatch");
  }
  const SliceAlgebra& alg = p.algebra();
  const int k = alg.root.k;
  const int slices = p.num_slices();
  NilPoly r(alg, slices);
  const bool deformed = alg.variant == ExchangeVariant::QCommuting;

  for (const auto& [ka, ca] : p.terms()) {
    for (const auto& [kb, cb] : q.terms()) {
      NilPoly::ExpKey key(slices);
      bool dead = false;
      for (int i = 0; i < slices; ++i) {
        key[i].first = ka[i].first + kb[i].first;
        key[i].second = ka[i].second + kb[i].second;
        if (key[i].first > k || key[i].second > k) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      cplx coeff = ca * cb;
      if (deformed) {
        // Every zbar of the right factor crosses every z of the left factor
        // during canonicalization; each crossing contributes q^2.
        long long crossings =
            static_cast<long long>(total_z(ka)) * total_zbar(kb);
        if (!alg.same_slice_exchange) {
          for (int i = 0; i < slices; ++i) {
            crossings -= static_cast<long long>(ka[i].second) * kb[i].first;
          }
        }
        coeff *= q_pow(alg.root, 2 * crossings);
      }
      r.add_term(key, coeff);
    }
  }
  return r;
}

namespace {

// Shared series driver: sum_{j>=1} scale(j) * x^j applied to a nilpotent x.
// Every monomial of x has total degree >= 1, so x^j dies once j exceeds
// 2 * slices * k.
template <typename ScaleFn>
NilPoly nilpotent_series(const NilPoly& x, ScaleFn scale) {
  NilPoly acc(x.algebra(), x.num_slices());
  NilPoly power = x;
  const int max_j = 2 * x.num_slices() * x.algebra().root.k + 1;
  for (int j = 1; j <= max_j && !power.is_zero(); ++j) {
    acc += power * scale(j);
    power = nil_mul(power, x);
  }
  return acc;
}

}  // namespace

NilPoly nil_exp(const NilPoly& p) {
  const cplx c = p.constant_term();
  NilPoly x = p - NilPoly::constant(p.algebra(), p.num_slices(), c);
  double factorial = 1.0;
  NilPoly series = nilpotent_series(x, [&factorial](int j) {
    factorial *= j;
    return cplx(1.0 / factorial, 0.0);
  });
  NilPoly one = NilPoly::constant(p.algebra(), p.num_slices(), 1.0);
  return (one + series) * std::exp(c);
}

NilPoly nil_log(const NilPoly& p) {
  const cplx c = p.constant_term();
  if (std::abs(c - 1.0) > 1e-12) {
    throw std::invalid_argument("nil_log requires constant term 1");
  }
  NilPoly x = p - NilPoly::constant(p.algebra(), p.num_slices(), c);
  double sign = 1.0;
  NilPoly series = nilpotent_series(x, [&sign](int j) {
    const cplx s(sign / j, 0.0);
    sign = -sign;
    return s;
  });
  return series + NilPoly::constant(p.algebra(), p.num_slices(), std::log(c));
}

NilPoly nil_inv(const NilPoly& p) {
  const cplx c = p.constant_term();
  if (std::abs(c) < 1e-300) {
    throw std::invalid_argument("nil_inv requires nonzero constant term");
  }
  // 1/p = (1/c) * sum (-x)^j with x = p/c - 1.
  NilPoly x = p * (1.0 / c) - NilPoly::constant(p.algebra(), p.num_slices(), 1.0);
  double sign = -1.0;
  NilPoly series = nilpotent_series(x, [&sign](int) {
    const cplx s(sign, 0.0);
    sign = -sign;
    return s;
  });
  NilPoly one = NilPoly::constant(p.algebra(), p.num_slices(), 1.0);
  return (one + series) * (1.0 / c);
}

NilPoly q_derivative(const NilPoly& p, int slice, bool conjugated) {
  if (slice < 0 || slice >= p.num_slices()) {
    throw std::invalid_argument("slice index out of range");
  }
  const SliceAlgebra& alg = p.algebra();
  NilPoly r(alg, p.num_slices());
  for (const auto& [key, c] : p.terms()) {
    const int power = conjugated ? key[slice].first : key[slice].second;
    if (power == 0) continue;
    NilPoly::ExpKey lowered = key;
    if (conjugated) {
      --lowered[slice].first;
    } else {
      --lowered[slice].second;
    }
    r.add_term(lowered, c * q_num_box(power, alg.root));
  }
  return r;
}

NilPoly berezin_integrate(const NilPoly& p, int slice) {
  if (slice < 0 || slice >= p.num_slices()) {
    throw std::invalid_argument("slice index out of range");
  }
  const SliceAlgebra& alg = p.algebra();
  const int k = alg.root.k;
  cplx weight = q_factorial_sym(k, alg.root);
  if (alg.variant == ExchangeVariant::QCommuting && alg.same_slice_exchange) {
    weight *= q_pow(alg.root, -2LL * k * k);
  }
  std::vector<int> remaining;
  for (int i = 0; i < p.num_slices(); ++i) {
    if (i != slice) remaining.push_back(i);
  }
  NilPoly r(alg, p.num_slices() - 1);
  for (const auto& [key, c] : p.terms()) {
    if (key[slice].first != k || key[slice].second != k) continue;
    NilPoly::ExpKey reduced;
    reduced.reserve(remaining.size());
    for (int i : remaining) reduced.push_back(key[i]);
    r.add_term(reduced, c * weight);
  }
  return r;
}

void write_json(std::ostream& os, const NilPoly& p) {
  os << "[";
  bool first = true;
  for (const auto& [key, c] : p.terms()) {
    os << (first ? "" : ",") << "\n  {\"exponents\": [";
    for (size_t i = 0; i < key.size(); ++i) {
      os << (i ? "," : "") << "[" << key[i].first << "," << key[i].second << "]";
    }
    os << "], \"re\": " << fmt_g15(c.real()) << ", \"im\": " << fmt_g15(c.imag()) << "}";
    first = false;
  }
  os << "\n]\n";
}

void write_csv(std::ostream& os, const NilPoly& p) {
  for (const auto& [key, c] : p.terms()) {
    for (size_t i = 0; i < key.size(); ++i) {
      os << (i ? "|" : "") << key[i].first << ":" << key[i].second;
    }
    os << "," << fmt_g15(c.real()) << "," << fmt_g15(c.imag()) << "\n";
  }
}

}  // namespace qpath
