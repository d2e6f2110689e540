#pragma once

// Nilpotent generalized-Grassmann algebra over time-slice variable pairs
// (zbar(t_i), z(t_i)), i = 0..S-1, with z^(k+1) = zbar^(k+1) = 0.
//
// Two exchange variants:
//   FullyCommuting - every variable commutes with every other; the
//                    deformation lives entirely in the derivative rule.
//   QCommuting     - z(t_i) zbar(t_j) = q^2 zbar(t_j) z(t_i) for all i, j
//                    (the same-slice case i = j included by default);
//                    zbar's commute among themselves, z's likewise.
//                    At k = 1 this is the anticommuting Grassmann algebra.
//
// Canonical monomial order: all zbar factors first (ascending slice), then
// all z factors (ascending slice).  Every stored term is canonical; a
// coefficient therefore picks up q^(+2) each time a zbar moves left past a
// z during reduction.  Nilpotent overflow terms vanish on construction.

#include <complex>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "qpath/qnum.hpp"

namespace qpath {

enum class ExchangeVariant { FullyCommuting, QCommuting };

struct SliceAlgebra {
  ExchangeVariant variant = ExchangeVariant::FullyCommuting;
  RootData root;
  // Whether the q^2 exchange rule also applies when both variables live on
  // the same slice.  The measure 1 + q^2 zbar z + q^2 zbar^2 z^2 is only
  // reproduced with this on; the toggle exists for experimentation.
  bool same_slice_exchange = true;

  bool compatible(const SliceAlgebra& o) const {
    return variant == o.variant && root.k == o.root.k &&
           same_slice_exchange == o.same_slice_exchange;
  }
};

// Hard cap on the number of live slices; (k+1)^(2S) terms is the worst
// case, and nothing in the evolution engine ever needs more than 3.
inline constexpr int kMaxSlices = 64;

// Coefficients below this magnitude are pruned after every operation.
inline constexpr double kPruneThreshold = 1e-14;

class NilPoly {
 public:
  // (zbar power, z power) per slice, each in 0..k.
  using ExpKey = std::vector<std::pair<int, int>>;
  using TermMap = std::map<ExpKey, cplx>;

  NilPoly(SliceAlgebra algebra, int num_slices);

  static NilPoly constant(const SliceAlgebra& algebra, int num_slices, cplx value);
  static NilPoly monomial(const SliceAlgebra& algebra, int num_slices, const ExpKey& key,
                          cplx coeff);
  // Single variable zbar(t_slice) (conjugated = true) or z(t_slice).
  static NilPoly variable(const SliceAlgebra& algebra, int num_slices, int slice,
                          bool conjugated);

  const SliceAlgebra& algebra() const { return algebra_; }
  int num_slices() const { return num_slices_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  cplx coeff(const ExpKey& key) const;
  cplx constant_term() const;

  NilPoly operator+(const NilPoly& o) const;
  NilPoly operator-(const NilPoly& o) const;
  NilPoly operator*(cplx s) const;
  NilPoly& operator+=(const NilPoly& o);

  // Coefficient-wise comparison over the union of stored terms.
  double max_abs_diff(const NilPoly& o) const;
  double max_abs() const;

  // Complex conjugation: swaps zbar and z powers per slice and conjugates
  // coefficients.  The result is already canonical.
  NilPoly conjugated() const;

  // Re-embeds into a polynomial with new_num_slices slices, sending old
  // slice i to slice_of_old[i].  Pure relabeling, no phases.
  NilPoly remap_slices(int new_num_slices, const std::vector<int>& slice_of_old) const;

  void add_term(const ExpKey& key, cplx coeff);

 private:
  SliceAlgebra algebra_;
  int num_slices_ = 0;
  TermMap terms_;
};

// Product reduced to canonical form; throws on algebra/slice mismatch.
NilPoly nil_mul(const NilPoly& p, const NilPoly& q);

// Terminating power series.  nil_exp splits off the constant term as a
// scalar factor; nil_log requires constant term 1; nil_inv requires a
// nonzero constant term.
NilPoly nil_exp(const NilPoly& p);
NilPoly nil_log(const NilPoly& p);
NilPoly nil_inv(const NilPoly& p);

// Left-acting deformed derivative on one slice:
//   conjugated = true:   dbar zbar^m z^n -> [m]_box zbar^(m-1) z^n
//   conjugated = false:  d    zbar^m z^n -> [n]_box zbar^m z^(n-1)
// Realizes dbar zbar - q^2 zbar dbar = 1 on the full function basis.
NilPoly q_derivative(const NilPoly& p, int slice, bool conjugated);

// Berezin-type integration over one slice: keeps terms with both powers on
// that slice saturated at k, scales them by the integral weight, and
// removes the slice (indices above shift down).  The defining rule is
// stated for the ordering z^k zbar^k; converting from canonical zbar-first
// storage contributes q^(-2k^2) in the QCommuting variant, so the weight is
// q^(-2k^2) [k]_sym! there and [k]_sym! in the FullyCommuting one.
NilPoly berezin_integrate(const NilPoly& p, int slice);

// JSON-style list of {"exponents": [[m,n],...], "re": x, "im": y} records,
// sorted by exponent key, 15 significant digits.
void write_json(std::ostream& os, const NilPoly& p);

// CSV rows "exponents,re,im" with the key flattened as m:n pairs joined
// by '|'.  No header.
void write_csv(std::ostream& os, const NilPoly& p);

}  // namespace qpath
