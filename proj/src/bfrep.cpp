#include "qpath/bfrep.hpp"

#include <cmath>
#include <stdexcept>

namespace qpath {

namespace {

double fact_sqrt(int n, const RootData& r) {
  return std::sqrt(q_factorial_sym(n, r).real());
}

// Solves the dense complex system m x = rhs by Gaussian elimination with
// partial pivoting.  Dimensions here are at most k+1.
std::vector<cplx> solve_linear(CMat m, std::vector<cplx> rhs) {
  const int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (std::abs(m(pivot, col)) < 1e-12) {
      throw std::runtime_error("singular measure system");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m(col, c), m(pivot, c));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (int r = col + 1; r < n; ++r) {
      const cplx f = m(r, col) / m(col, col);
      if (f == cplx{}) continue;
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = rhs[r];
    for (int c = r + 1; c < n; ++c) acc -= m(r, c) * x[c];
    x[r] = acc / m(r, r);
  }
  return x;
}

}  // namespace

BFBasis make_bf_basis(const SliceAlgebra& algebra) {
  BFBasis basis;
  basis.root = algebra.root;
  basis.algebra = algebra;
  for (int n = 0; n <= algebra.root.k; ++n) {
    basis.psi.push_back(NilPoly::monomial(algebra, 1, {{n, 0}},
                                          cplx(1.0 / fact_sqrt(n, algebra.root), 0.0)));
  }
  return basis;
}

cplx scalar_product(const NilPoly& f, const NilPoly& mu, const NilPoly& g) {
  NilPoly integrand = nil_mul(nil_mul(f.conjugated(), mu), g);
  return berezin_integrate(integrand, 0).constant_term();
}

NilPoly solve_measure(const BFBasis& basis) {
  const int d = basis.root.k + 1;
  CMat system(d, d);
  for (int n = 0; n < d; ++n) {
    for (int j = 0; j < d; ++j) {
      NilPoly monomial = NilPoly::monomial(basis.algebra, 1, {{j, j}}, 1.0);
      system(n, j) = scalar_product(basis.psi[n], monomial, basis.psi[n]);
    }
  }
  const std::vector<cplx> mu = solve_linear(system, std::vector<cplx>(d, cplx(1.0)));
  NilPoly result(basis.algebra, 1);
  for (int j = 0; j < d; ++j) result.add_term({{j, j}}, mu[j]);
  return result;
}

Kernel identity_kernel(const BFBasis& basis) {
  NilPoly sum(basis.algebra, 2);
  const std::vector<int> to_in{0};
  const std::vector<int> to_out{1};
  for (const NilPoly& psi : basis.psi) {
    NilPoly out_part = psi.remap_slices(2, to_out);
    NilPoly in_part = psi.conjugated().remap_slices(2, to_in);
    sum += nil_mul(out_part, in_part);
  }
  return Kernel{sum};
}

Kernel operator_kernel(const CMat& a, const BFBasis& basis) {
  const int d = basis.root.k + 1;
  if (a.rows() != d || a.cols() != d) {
    throw std::invalid_argument("operator dimension does not match Fock space");
  }
  NilPoly poly(basis.algebra, 2);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const cplx c = a(m, n) / (fact_sqrt(m, basis.root) * fact_sqrt(n, basis.root));
      poly.add_term({{0, n}, {m, 0}}, c);
    }
  }
  return Kernel{poly};
}

CMat kernel_to_operator(const Kernel& kernel, const BFBasis& basis) {
  const int d = basis.root.k + 1;
  CMat a(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      a(m, n) = kernel.coeff(m, n) * fact_sqrt(m, basis.root) * fact_sqrt(n, basis.root);
    }
  }
  return a;
}

Kernel kernel_convolve(const Kernel& later, const Kernel& earlier, const NilPoly& mu) {
  if (!later.poly.algebra().compatible(earlier.poly.algebra()) ||
      !later.poly.algebra().compatible(mu.algebra())) {
    throw std::invalid_argument("algebra mismatch");
  }
  // Three live slices: 0 = in, 1 = intermediate, 2 = out.  The measure sits
  // between the kernels; with q-commuting variables the factors multiply in
  // exactly this order before the intermediate slice is integrated out.
  NilPoly lhs = later.poly.remap_slices(3, {1, 2});
  NilPoly rhs = earlier.poly.remap_slices(3, {0, 1});
  NilPoly mid = mu.remap_slices(3, {1});
  NilPoly product = nil_mul(nil_mul(lhs, mid), rhs);
  return Kernel{berezin_integrate(product, 1)};
}

NilPoly effective_hamiltonian(const Kernel& h_kernel, const Kernel& g) {
  return nil_mul(nil_inv(g.poly), h_kernel.poly);
}

CMat normal_order_coefficients(const CMat& a, const CMat& raise, const CMat& lower) {
  const int d = a.rows();
  std::vector<CMat> raise_pow(d), lower_pow(d);
  raise_pow[0] = CMat::identity(d);
  lower_pow[0] = CMat::identity(d);
  for (int p = 1; p < d; ++p) {
    raise_pow[p] = raise_pow[p - 1] * raise;
    lower_pow[p] = lower_pow[p - 1] * lower;
  }
  CMat alpha(d, d);
  // raise^m lower^n only populates the (m - n)-th matrix diagonal, and its
  // entry in column j vanishes for j < n; each diagonal solves forward.
  for (int diff = -(d - 1); diff <= d - 1; ++diff) {
    if (diff >= 0) {
      for (int j = 0; j + diff < d; ++j) {
        cplx acc = a(j + diff, j);
        for (int n = 0; n < j; ++n) {
          acc -= alpha(n + diff, n) * (raise_pow[n + diff] * lower_pow[n])(j + diff, j);
        }
        alpha(j + diff, j) = acc / (raise_pow[j + diff] * lower_pow[j])(j + diff, j);
      }
    } else {
      const int c = -diff;
      for (int i = 0; i + c < d; ++i) {
        cplx acc = a(i, i + c);
        for (int m = 0; m < i; ++m) {
          acc -= alpha(m, m + c) * (raise_pow[m] * lower_pow[m + c])(i, i + c);
        }
        alpha(i, i + c) = acc / (raise_pow[i] * lower_pow[i + c])(i, i + c);
      }
    }
  }
  return alpha;
}

NilPoly normal_symbol(const CMat& a, const BFBasis& basis) {
  const FockRep rep = build_fock_rep(basis.root);
  const CMat alpha = normal_order_coefficients(a, rep.b_bar, rep.b);
  NilPoly symbol(basis.algebra, 1);
  for (int m = 0; m <= basis.root.k; ++m) {
    for (int n = 0; n <= basis.root.k; ++n) {
      symbol.add_term({{m, n}}, alpha(m, n));
    }
  }
  return symbol;
}

double symbol_kernel_relation_check(const BFBasis& basis) {
  const FockRep rep = build_fock_rep(basis.root);
  const NilPoly mu = solve_measure(basis);
  // Multiplication by zbar has the same matrix as b_bar on the psi basis;
  // its adjoint under the mu scalar product is the Dbar ladder.
  const CMat raise = rep.b_bar;
  const CMat lower = raise.adjoint();
  const int d = basis.root.k + 1;

  std::vector<CMat> family;
  family.push_back(CMat::identity(d));
  family.push_back(raise * lower);
  if (basis.root.k >= 2) {
    family.push_back(raise.pow(2) * lower.pow(2));
    family.push_back(build_hamiltonian(rep, {cplx(1.0), -basis.root.q, 1.0}));
    family.push_back(build_hamiltonian(rep, {cplx(1.0), 1.0 - 2.0 * basis.root.q, 1.0}));
    family.push_back(build_hamiltonian(rep, {cplx(0.0), -basis.root.q2, 1.0}));
  }

  double residual = 0.0;
  for (const CMat& a : family) {
    const CMat alpha = normal_order_coefficients(a, raise, lower);
    NilPoly symbol(basis.algebra, 1);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) symbol.add_term({{m, n}}, alpha(m, n));
    }
    NilPoly related = nil_mul(symbol, mu);
    // Compare against the kernel read as a one-slice diagonal polynomial.
    NilPoly kernel_flat(basis.algebra, 1);
    const Kernel kernel = operator_kernel(a, basis);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const cplx c = kernel.coeff(m, n);
        if (c != cplx{}) kernel_flat.add_term({{m, n}}, c);
      }
    }
    residual = std::max(residual, related.max_abs_diff(kernel_flat));
  }
  return residual;
}

DbarReport dbar_realization_check(const RootData& root) {
  if (root.k != 2) throw std::invalid_argument("Dbar realization check requires k = 2");
  const SliceAlgebra algebra{ExchangeVariant::FullyCommuting, root, true};
  const BFBasis basis = make_bf_basis(algebra);
  const NilPoly mu = solve_measure(basis);
  const int d = 3;

  DbarReport report;
  const PolynomialFock pf = polynomial_fock(2);
  report.ladder = pf.ladder;

  // Matrix of multiplication by zbar on the psi basis, extracted from the
  // function space rather than assumed.
  const NilPoly zbar = NilPoly::variable(algebra, 1, 0, true);
  CMat mult(d, d);
  for (int n = 0; n < d; ++n) {
    const NilPoly image = nil_mul(zbar, basis.psi[n]);
    for (int m = 0; m < d; ++m) {
      mult(m, n) = image.coeff({{m, 0}}) * fact_sqrt(m, root);
    }
  }
  CMat dbar(d, d);
  for (int n = 1; n < d; ++n) dbar(n - 1, n) = pf.ladder[n - 1];

  report.relation_residual =
      (dbar * mult + mult.pow(2) * dbar.pow(2) - CMat::identity(d)).max_abs();

  double adj = 0.0;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const cplx lhs = scalar_product(nil_mul(zbar, basis.psi[n]), mu, basis.psi[m]);
      NilPoly dbar_psi(algebra, 1);
      if (m >= 1) dbar_psi = basis.psi[m - 1] * cplx(pf.ladder[m - 1], 0.0);
      const cplx rhs = scalar_product(basis.psi[n], mu, dbar_psi);
      adj = std::max(adj, std::abs(lhs - rhs));
    }
  }
  report.adjoint_residual = adj;
  return report;
}

}  // namespace qpath
