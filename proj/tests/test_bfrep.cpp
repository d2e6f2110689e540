#include "doctest.h"
#include "qpath/bfrep.hpp"

#include <cmath>
#include <random>

using namespace qpath;

namespace {

constexpr double kTol = 1e-12;

SliceAlgebra qc(int k) { return {ExchangeVariant::QCommuting, q_root(k), true}; }
SliceAlgebra fc(int k) { return {ExchangeVariant::FullyCommuting, q_root(k), true}; }

cplx rand_c(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

CMat rand_mat(int d, std::mt19937& rng) {
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rand_c(rng);
  return m;
}

}  // namespace

TEST_CASE("measure solves to the classic coefficients") {
  {
    const NilPoly mu = solve_measure(make_bf_basis(qc(2)));
    const cplx q2 = q_root(2).q2;
    CHECK(std::abs(mu.coeff({{0, 0}}) - 1.0) < kTol);
    CHECK(std::abs(mu.coeff({{1, 1}}) - q2) < kTol);
    CHECK(std::abs(mu.coeff({{2, 2}}) - q2) < kTol);
  }
  {
    const NilPoly mu = solve_measure(make_bf_basis(fc(2)));
    for (int j = 0; j <= 2; ++j) CHECK(std::abs(mu.coeff({{j, j}}) - 1.0) < kTol);
  }
  {
    // k = 1 commuting: the nilpotent expansion of e^(zbar z).
    const NilPoly mu = solve_measure(make_bf_basis(fc(1)));
    CHECK(std::abs(mu.coeff({{0, 0}}) - 1.0) < kTol);
    CHECK(std::abs(mu.coeff({{1, 1}}) - 1.0) < kTol);
  }
  {
    // k = 1 anticommuting: e^(-zbar z), the usual Grassmann weight.
    const NilPoly mu = solve_measure(make_bf_basis(qc(1)));
    CHECK(std::abs(mu.coeff({{0, 0}}) - 1.0) < kTol);
    CHECK(std::abs(mu.coeff({{1, 1}}) + 1.0) < kTol);
  }
}

TEST_CASE("without the same-slice exchange rule the measure flattens") {
  // The q^2 coefficients of mu come entirely from same-slice reordering;
  // with the rule switched off the q-commuting scalar product degenerates to
  // the commuting one.
  SliceAlgebra alg = qc(2);
  alg.same_slice_exchange = false;
  const NilPoly mu = solve_measure(make_bf_basis(alg));
  for (int j = 0; j <= 2; ++j) CHECK(std::abs(mu.coeff({{j, j}}) - 1.0) < kTol);
}

TEST_CASE("basis orthonormality under the solved measure") {
  for (int k : {1, 2, 3}) {
    for (const SliceAlgebra& alg : {qc(k), fc(k)}) {
      const BFBasis basis = make_bf_basis(alg);
      const NilPoly mu = solve_measure(basis);
      for (int n = 0; n <= k; ++n) {
        for (int m = 0; m <= k; ++m) {
          const cplx s = scalar_product(basis.psi[n], mu, basis.psi[m]);
          CHECK(std::abs(s - (n == m ? 1.0 : 0.0)) < kTol);
        }
      }
    }
  }
}

TEST_CASE("identity kernel coefficients") {
  {
    const Kernel g = identity_kernel(make_bf_basis(qc(2)));
    for (int n = 0; n <= 2; ++n) CHECK(std::abs(g.coeff(n, n) - 1.0) < kTol);
    CHECK(std::abs(g.coeff(1, 0)) < kTol);
  }
  {
    const Kernel g = identity_kernel(make_bf_basis(fc(1)));
    CHECK(std::abs(g.coeff(0, 0) - 1.0) < kTol);
    CHECK(std::abs(g.coeff(1, 1) - 1.0) < kTol);
  }
  {
    // k = 3: coefficients 1/[n]! = (1, 1, 2^-1/2, 2^-1/2).
    const Kernel g = identity_kernel(make_bf_basis(qc(3)));
    CHECK(std::abs(g.coeff(2, 2) - std::sqrt(0.5)) < kTol);
    CHECK(std::abs(g.coeff(3, 3) - std::sqrt(0.5)) < kTol);
  }
}

TEST_CASE("operator_kernel maps the identity to g") {
  for (int k : {1, 2, 3}) {
    for (const SliceAlgebra& alg : {qc(k), fc(k)}) {
      const BFBasis basis = make_bf_basis(alg);
      const Kernel g = identity_kernel(basis);
      CHECK(operator_kernel(CMat::identity(k + 1), basis).max_abs_diff(g) < kTol);
    }
  }
  CHECK_THROWS_AS(operator_kernel(CMat::identity(3), make_bf_basis(qc(1))),
                  std::invalid_argument);
}

TEST_CASE("kernel_to_operator inverts operator_kernel") {
  std::mt19937 rng(5);
  for (int k : {1, 2, 3}) {
    const BFBasis basis = make_bf_basis(qc(k));
    const CMat a = rand_mat(k + 1, rng);
    CHECK((kernel_to_operator(operator_kernel(a, basis), basis) - a).max_abs() < kTol);
  }
}

TEST_CASE("diagonal evolution kernel at k=1") {
  const BFBasis basis = make_bf_basis(fc(1));
  const double omega = 1.0, t = 1.0;
  const CMat u = CMat::diagonal({1.0, std::exp(cplx(0.0, -omega * t))});
  const Kernel ku = operator_kernel(u, basis);
  CHECK(std::abs(ku.coeff(0, 0) - 1.0) < kTol);
  CHECK(std::abs(ku.coeff(1, 1) - std::exp(cplx(0.0, -omega * t))) < kTol);
}

TEST_CASE("g is the convolution unit") {
  std::mt19937 rng(6);
  for (int k : {1, 2}) {
    for (const SliceAlgebra& alg : {qc(k), fc(k)}) {
      const BFBasis basis = make_bf_basis(alg);
      const NilPoly mu = solve_measure(basis);
      const Kernel g = identity_kernel(basis);
      CHECK(kernel_convolve(g, g, mu).max_abs_diff(g) < kTol);
      for (int trial = 0; trial < 20; ++trial) {
        const Kernel kr = operator_kernel(rand_mat(k + 1, rng), basis);
        CHECK(kernel_convolve(g, kr, mu).max_abs_diff(kr) < kTol);
        CHECK(kernel_convolve(kr, g, mu).max_abs_diff(kr) < kTol);
      }
    }
  }
}

TEST_CASE("convolution is a homomorphism onto the matrix product") {
  std::mt19937 rng(7);
  for (int k : {1, 2}) {
    for (const SliceAlgebra& alg : {qc(k), fc(k)}) {
      const BFBasis basis = make_bf_basis(alg);
      const NilPoly mu = solve_measure(basis);
      for (int trial = 0; trial < 100; ++trial) {
        const CMat a = rand_mat(k + 1, rng);
        const CMat b = rand_mat(k + 1, rng);
        const Kernel lhs =
            kernel_convolve(operator_kernel(a, basis), operator_kernel(b, basis), mu);
        CHECK(lhs.max_abs_diff(operator_kernel(a * b, basis)) < 1e-10);
      }
    }
  }
}

TEST_CASE("effective Hamiltonians") {
  const RootData root = q_root(2);
  const cplx q = root.q;
  std::mt19937 rng(8);

  // q-commuting: H_eff = omega (u zbar z + q (u + v - q u) zbar^2 z^2).
  {
    const BFBasis basis = make_bf_basis(qc(2));
    const Kernel g = identity_kernel(basis);
    const FockRep rep = build_fock_rep(root);
    for (int trial = 0; trial < 20; ++trial) {
      const cplx u = rand_c(rng), v = rand_c(rng);
      const double omega = 1.1;
      const NilPoly h_eff =
          effective_hamiltonian(operator_kernel(build_hamiltonian(rep, {u, v, omega}), basis), g);
      CHECK(std::abs(h_eff.coeff({{0, 1}, {1, 0}}) - omega * u) < kTol);
      CHECK(std::abs(h_eff.coeff({{0, 2}, {2, 0}}) - omega * q * (u + v - q * u)) < kTol);
      CHECK(std::abs(h_eff.constant_term()) < kTol);
    }
  }

  // Commuting variables: the z^2 coefficient is omega (q (u + v) - u), and
  // it is real for every hermitian couple.
  {
    const BFBasis basis = make_bf_basis(fc(2));
    const Kernel g = identity_kernel(basis);
    const FockRep rep = build_fock_rep(root);
    const double omega = 0.7;
    auto h_eff = [&](cplx u, cplx v) {
      return effective_hamiltonian(
          operator_kernel(build_hamiltonian(rep, {u, v, omega}), basis), g);
    };

    const NilPoly couple_i = h_eff(1.0, -q);
    CHECK(std::abs(couple_i.coeff({{0, 1}, {1, 0}}) - omega) < kTol);
    CHECK(std::abs(couple_i.coeff({{0, 2}, {2, 0}})) < kTol);

    const NilPoly couple_iii = h_eff(0.0, -root.q2);
    CHECK(std::abs(couple_iii.coeff({{0, 1}, {1, 0}})) < kTol);
    CHECK(std::abs(couple_iii.coeff({{0, 2}, {2, 0}}) - omega) < kTol);

    const cplx couples[][2] = {{1.0, -q}, {1.0, 1.0 - 2.0 * q}, {0.0, -root.q2}};
    for (const auto& uv : couples) {
      const NilPoly h = h_eff(uv[0], uv[1]);
      const cplx expected2 = omega * (q * (uv[0] + uv[1]) - uv[0]);
      CHECK(std::abs(h.coeff({{0, 2}, {2, 0}}) - expected2) < kTol);
      for (const auto& [key, c] : h.terms()) {
        (void)key;
        CHECK(std::abs(c.imag()) < kTol);  // real action functional
      }
    }
  }
}

TEST_CASE("normal symbols") {
  const RootData root = q_root(2);
  const BFBasis basis = make_bf_basis(qc(2));
  const FockRep rep = build_fock_rep(root);

  const NilPoly sym_number = normal_symbol(rep.b_bar * rep.b, basis);
  CHECK(std::abs(sym_number.coeff({{1, 1}}) - 1.0) < kTol);
  CHECK(sym_number.terms().size() == 1);

  // b b_bar reorders to 1 + q^2 b_bar b.
  const NilPoly sym_swapped = normal_symbol(rep.b * rep.b_bar, basis);
  CHECK(std::abs(sym_swapped.constant_term() - 1.0) < kTol);
  CHECK(std::abs(sym_swapped.coeff({{1, 1}}) - root.q2) < kTol);

  CHECK(std::abs(normal_symbol(CMat::identity(3), basis).constant_term() - 1.0) < kTol);

  // The expansion reconstructs an arbitrary operator.
  std::mt19937 rng(9);
  for (int k : {1, 2, 3}) {
    const FockRep rk = build_fock_rep(q_root(k));
    const CMat a = rand_mat(k + 1, rng);
    const CMat alpha = normal_order_coefficients(a, rk.b_bar, rk.b);
    CMat rebuilt(k + 1, k + 1);
    for (int m = 0; m <= k; ++m) {
      for (int n = 0; n <= k; ++n) {
        rebuilt = rebuilt + rk.b_bar.pow(m) * rk.b.pow(n) * alpha(m, n);
      }
    }
    CHECK((rebuilt - a).max_abs() < 1e-10);
  }
}

TEST_CASE("kernel = symbol * mu for the hermitian pair, commuting variables") {
  for (int k : {1, 2, 3}) {
    CHECK(symbol_kernel_relation_check(make_bf_basis(fc(k))) < kTol);
  }
}

TEST_CASE("creation is multiplication, destruction is the derivative") {
  // Matrix of multiplication by zbar on the basis equals b_bar; matrix of
  // the deformed derivative equals b (commuting variables).
  for (int k : {1, 2, 3}) {
    const SliceAlgebra alg = fc(k);
    const BFBasis basis = make_bf_basis(alg);
    const FockRep rep = build_fock_rep(alg.root);
    const NilPoly zbar = NilPoly::variable(alg, 1, 0, true);
    CMat mult(k + 1, k + 1), deriv(k + 1, k + 1);
    for (int n = 0; n <= k; ++n) {
      const NilPoly raised = nil_mul(zbar, basis.psi[n]);
      const NilPoly lowered = q_derivative(basis.psi[n], 0, true);
      for (int m = 0; m <= k; ++m) {
        const double norm = std::sqrt(q_factorial_sym(m, alg.root).real());
        mult(m, n) = raised.coeff({{m, 0}}) * norm;
        deriv(m, n) = lowered.coeff({{m, 0}}) * norm;
      }
    }
    CHECK((mult - rep.b_bar).max_abs() < kTol);
    CHECK((deriv - rep.b).max_abs() < kTol);
    // Hence the kernels coincide as well.
    CHECK(operator_kernel(mult, basis).max_abs_diff(operator_kernel(rep.b_bar, basis)) < kTol);
    CHECK(operator_kernel(deriv, basis).max_abs_diff(operator_kernel(rep.b, basis)) < kTol);
  }
}

TEST_CASE("Dbar realization at k=2") {
  const DbarReport report = dbar_realization_check(q_root(2));
  REQUIRE(report.ladder.size() == 2);
  CHECK(std::abs(report.ladder[0] - 1.0) < kTol);
  CHECK(std::abs(report.ladder[1] - 1.0) < kTol);
  CHECK(report.relation_residual < kTol);
  CHECK(report.adjoint_residual < kTol);
  CHECK_THROWS_AS(dbar_realization_check(q_root(1)), std::invalid_argument);
}
