#include "doctest.h"
#include "qpath/pathint.hpp"

#include <cmath>
#include <sstream>

using namespace qpath;

namespace {
constexpr double kTol = 1e-12;

EvolutionJob job_k2_couple_i(int slices) {
  EvolutionJob job;
  job.root = q_root(2);
  job.variant = ExchangeVariant::QCommuting;
  job.hamiltonian = {1.0, -job.root.q, 1.0};
  job.total_time = 1.0;
  job.slices = slices;
  return job;
}
}  // namespace

TEST_CASE("zero time step gives the identity kernel") {
  for (ExchangeVariant variant :
       {ExchangeVariant::QCommuting, ExchangeVariant::FullyCommuting}) {
    for (int k : {1, 2}) {
      EvolutionJob job;
      job.root = q_root(k);
      job.variant = variant;
      job.hamiltonian = {1.0, k == 2 ? -job.root.q : cplx(0.0), 1.0};
      job.total_time = 0.0;
      job.slices = 4;
      const Kernel g = identity_kernel(make_bf_basis(job.algebra()));
      CHECK(infinitesimal_kernel(job).max_abs_diff(g) < kTol);
      CHECK(evolve_discrete(job).max_abs_diff(g) < kTol);
    }
  }
}

TEST_CASE("k=1 infinitesimal kernel matches the first-order operator kernel") {
  EvolutionJob job;
  job.root = q_root(1);
  job.variant = ExchangeVariant::FullyCommuting;
  job.hamiltonian = {1.0, 0.0, 0.8};
  job.total_time = 0.25;
  job.slices = 1;
  const double dt = job.delta_t();
  const Kernel u = infinitesimal_kernel(job);
  CHECK(std::abs(u.coeff(0, 0) - 1.0) < kTol);
  // g exp(-i H_eff dt) truncates to 1 + (1 - i omega dt) zbar z at k = 1,
  // which is exactly the kernel of 1 - i H dt.
  CHECK(std::abs(u.coeff(1, 1) - (1.0 - cplx(0.0, 0.8 * dt))) < kTol);

  const BFBasis basis = make_bf_basis(job.algebra());
  const FockRep rep = build_fock_rep(job.root);
  const CMat h = build_hamiltonian(rep, job.hamiltonian);
  const Kernel first_order =
      operator_kernel(CMat::identity(2) - h * cplx(0.0, dt), basis);
  CHECK(u.max_abs_diff(first_order) < kTol);
}

TEST_CASE("per-step defect shrinks like dt^2") {
  const BFBasis basis = make_bf_basis(job_k2_couple_i(1).algebra());
  const FockRep rep = build_fock_rep(q_root(2));
  const CMat h = build_hamiltonian(rep, {1.0, -q_root(2).q, 1.0});
  auto defect = [&](double dt) {
    EvolutionJob job = job_k2_couple_i(1);
    job.total_time = dt;
    return infinitesimal_kernel(job).max_abs_diff(
        operator_kernel(exact_evolution(h, dt), basis));
  };
  const double r = defect(0.02) / defect(0.01);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("single step equals the infinitesimal kernel; H = 0 is inert") {
  const EvolutionJob job = job_k2_couple_i(1);
  CHECK(evolve_discrete(job).max_abs_diff(infinitesimal_kernel(job)) < kTol);

  EvolutionJob trivial = job_k2_couple_i(5);
  trivial.hamiltonian = {0.0, 0.0, 1.0};
  const Kernel g = identity_kernel(make_bf_basis(trivial.algebra()));
  CHECK(evolve_discrete(trivial).max_abs_diff(g) < kTol);
}

TEST_CASE("exact-step evolution reproduces the exact kernel for any K") {
  // With the infinitesimal kernel replaced by the kernel of exp(-i H dt),
  // the K-fold convolution telescopes exactly; this isolates convolution
  // error from discretization error.
  const BFBasis basis = make_bf_basis(job_k2_couple_i(1).algebra());
  const FockRep rep = build_fock_rep(q_root(2));
  const CMat h = build_hamiltonian(rep, {1.0, -q_root(2).q, 1.0});
  const Kernel exact = operator_kernel(exact_evolution(h, 1.0), basis);
  for (int slices : {1, 7, 16}) {
    EvolutionJob job = job_k2_couple_i(slices);
    job.exact_step = true;
    CHECK(evolve_discrete(job).max_abs_diff(exact) < 1e-10);
  }
}

TEST_CASE("semigroup consistency") {
  const EvolutionJob whole = job_k2_couple_i(16);
  EvolutionJob half = job_k2_couple_i(8);
  half.total_time = 0.5;
  const BFBasis basis = make_bf_basis(whole.algebra());
  const NilPoly mu = solve_measure(basis);
  const Kernel part = evolve_discrete(half);
  CHECK(kernel_convolve(part, part, mu).max_abs_diff(evolve_discrete(whole)) < 1e-12);
}

TEST_CASE("convergence sweep at k=2") {
  const std::vector<SweepRow> rows = convergence_sweep(job_k2_couple_i(1), {16, 32, 64, 128});
  REQUIRE(rows.size() == 4);
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].max_coeff_error / rows[i + 1].max_coeff_error;
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
    CHECK(rows[i + 1].unitarity_residual < rows[i].unitarity_residual);
  }
  CHECK(rows.back().max_coeff_error < 2e-2);
  CHECK(rows.front().delta_t == doctest::Approx(1.0 / 16));
}

TEST_CASE("convergence holds beyond k = 2") {
  // At k = 3 the hermitian couples collapse to v = -u; the sweep should
  // stay first-order there too.
  EvolutionJob job;
  job.root = q_root(3);
  job.variant = ExchangeVariant::QCommuting;
  job.hamiltonian = {1.0, -1.0, 1.0};
  job.total_time = 1.0;
  const FockRep rep = build_fock_rep(job.root);
  CHECK(hermiticity_classify(rep, job.hamiltonian).hermitian);
  const std::vector<SweepRow> rows = convergence_sweep(job, {16, 32, 64});
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].max_coeff_error / rows[i + 1].max_coeff_error;
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
  }
}

TEST_CASE("errors are monotone from K = 8") {
  const std::vector<SweepRow> rows = convergence_sweep(job_k2_couple_i(1), {8, 16, 32, 64});
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i + 1].max_coeff_error <= rows[i].max_coeff_error);
  }
}

TEST_CASE("fermionic closed form") {
  EvolutionJob job;
  job.root = q_root(1);
  job.variant = ExchangeVariant::FullyCommuting;
  job.hamiltonian = {1.0, 0.0, 1.0};
  job.total_time = 1.0;

  Kernel target{NilPoly(job.algebra(), 2)};
  target.poly.add_term({{0, 0}, {0, 0}}, 1.0);
  target.poly.add_term({{0, 1}, {1, 0}}, std::exp(cplx(0.0, -1.0)));

  job.slices = 256;
  const double err256 = evolve_discrete(job).max_abs_diff(target);
  CHECK(err256 < 5e-3);
  job.slices = 1024;
  const double err1024 = evolve_discrete(job).max_abs_diff(target);
  CHECK(err256 / err1024 >= 3.5);
}

TEST_CASE("continuum report, commuting variables") {
  {
    const ContinuumReport report =
        continuum_coefficient_report(q_root(2), ExchangeVariant::FullyCommuting);
    const CoefficientRow* measure = report.find("measure_factor_mu_g");
    REQUIRE(measure != nullptr);
    REQUIRE(measure->derived.size() == 3);
    CHECK(std::abs(measure->derived[0] - 1.0) < kTol);
    CHECK(std::abs(measure->derived[1] - 2.0) < kTol);
    CHECK(std::abs(measure->derived[2] - 3.0) < kTol);
    CHECK(measure->comparable);
    CHECK(measure->max_mismatch < kTol);

    const CoefficientRow* action = report.find("action_factor");
    REQUIRE(action != nullptr);
    CHECK(std::abs(action->derived[0] - 1.0) < kTol);
    CHECK(std::abs(action->derived[1] - 1.0) < kTol);
    CHECK(action->max_mismatch < kTol);

    const CoefficientRow* log_g = report.find("boundary_log_g");
    REQUIRE(log_g != nullptr);
    CHECK(std::abs(log_g->derived[1] - 1.0) < kTol);
  }
  {
    const ContinuumReport report =
        continuum_coefficient_report(q_root(1), ExchangeVariant::FullyCommuting);
    const CoefficientRow* measure = report.find("measure_factor_mu_g");
    REQUIRE(measure != nullptr);
    CHECK(std::abs(measure->derived[1] - 2.0) < kTol);
    CHECK(measure->max_mismatch < kTol);
    const CoefficientRow* inverse = report.find("inverse_1_minus_2zbarz");
    REQUIRE(inverse != nullptr);
    CHECK(inverse->max_mismatch < kTol);
  }
}

TEST_CASE("continuum report, q-commuting variables") {
  {
    // Derived per-slice measure factor reduces to 1 + q zbar z at k = 2.
    const ContinuumReport report =
        continuum_coefficient_report(q_root(2), ExchangeVariant::QCommuting);
    const CoefficientRow* measure = report.find("measure_factor_mu_g");
    REQUIRE(measure != nullptr);
    CHECK(std::abs(measure->derived[0] - 1.0) < kTol);
    CHECK(std::abs(measure->derived[1] - q_root(2).q) < kTol);
    CHECK(std::abs(measure->derived[2]) < kTol);
    CHECK(measure->comparable);
  }
  {
    // k = 1: the anticommuting algebra reproduces the flat Grassmann
    // measure, mu g = 1.
    const ContinuumReport report =
        continuum_coefficient_report(q_root(1), ExchangeVariant::QCommuting);
    const CoefficientRow* measure = report.find("measure_factor_mu_g");
    REQUIRE(measure != nullptr);
    CHECK(std::abs(measure->derived[0] - 1.0) < kTol);
    CHECK(std::abs(measure->derived[1]) < kTol);
  }
}

TEST_CASE("k=3 report carries both g coefficient sets") {
  const ContinuumReport report =
      continuum_coefficient_report(q_root(3), ExchangeVariant::QCommuting);
  const CoefficientRow* g = report.find("g");
  REQUIRE(g != nullptr);
  REQUIRE(g->derived.size() == 4);
  REQUIRE(g->stated.size() == 4);
  CHECK(std::abs(g->derived[2] - std::sqrt(0.5)) < kTol);
  CHECK(std::abs(g->derived[3] - std::sqrt(0.5)) < kTol);
  CHECK(std::abs(g->stated[2] - std::pow(2.0, -0.25)) < kTol);
  CHECK(std::abs(g->stated[3] - std::pow(2.0, -0.25)) < kTol);
  // The factorial-convention collision is visible, not asserted away.
  CHECK(g->max_mismatch > 0.1);

  std::ostringstream os;
  format_report(os, report);
  CHECK(os.str().find("derived") != std::string::npos);
  CHECK(os.str().find("stated") != std::string::npos);
  CHECK(os.str().find("DIFFERS") != std::string::npos);
}

TEST_CASE("report rejects unsupported k") {
  CHECK_THROWS_AS(continuum_coefficient_report(q_root(4), ExchangeVariant::QCommuting),
                  std::invalid_argument);
}
