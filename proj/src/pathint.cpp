#include "qpath/pathint.hpp"

#include <cmath>
#include <stdexcept>

#include "qpath/format.hpp"

namespace qpath {

namespace {

// Diagonal coefficients c_j on zbar^j z^j of a one-slice polynomial.
std::vector<cplx> diag_coeffs(const NilPoly& p, int k) {
  std::vector<cplx> c(k + 1);
  for (int j = 0; j <= k; ++j) c[j] = p.coeff({{j, j}});
  return c;
}

// g as a one-slice polynomial: the completeness sum evaluated on a single
// variable pair.
NilPoly identity_kernel_diag(const BFBasis& basis) {
  NilPoly g(basis.algebra, 1);
  for (const NilPoly& psi : basis.psi) g += nil_mul(psi, psi.conjugated());
  return g;
}

// Formal derivative with respect to w = zbar z of a diagonal polynomial,
// converting through (zbar z)^j = q^(j(j-1)) zbar^j z^j in the q-commuting
// variant.  This is the naive candidate for the action-density factor; the
// closed expressions group these terms with conventions the derivation does
// not spell out, so the result is reported rather than asserted.
std::vector<cplx> formal_action_factor(const std::vector<cplx>& stored, const SliceAlgebra& alg) {
  const int k = alg.root.k;
  const bool deformed =
      alg.variant == ExchangeVariant::QCommuting && alg.same_slice_exchange;
  std::vector<cplx> result(k + 1, cplx{});
  for (int j = 0; j + 1 <= k; ++j) {
    cplx w_coeff = stored[j + 1];
    if (deformed) w_coeff *= q_pow(alg.root, -static_cast<long long>(j + 1) * j);
    cplx f = w_coeff * cplx(j + 1, 0);
    if (deformed) f *= q_pow(alg.root, static_cast<long long>(j) * (j - 1));
    result[j] = f;
  }
  return result;
}

CoefficientRow make_row(std::string label, std::vector<cplx> derived, std::vector<cplx> stated) {
  CoefficientRow row;
  row.label = std::move(label);
  row.derived = std::move(derived);
  row.stated = std::move(stated);
  row.comparable = !row.stated.empty();
  if (row.comparable) {
    const size_t n = std::max(row.derived.size(), row.stated.size());
    for (size_t j = 0; j < n; ++j) {
      const cplx d = j < row.derived.size() ? row.derived[j] : cplx{};
      const cplx s = j < row.stated.size() ? row.stated[j] : cplx{};
      row.max_mismatch = std::max(row.max_mismatch, std::abs(d - s));
    }
  }
  return row;
}

}  // namespace

Kernel infinitesimal_kernel(const EvolutionJob& job) {
  const BFBasis basis = make_bf_basis(job.algebra());
  const FockRep rep = build_fock_rep(job.root);
  const CMat h = build_hamiltonian(rep, job.hamiltonian);
  const double dt = job.delta_t();
  if (job.exact_step) {
    return operator_kernel(exact_evolution(h, dt), basis);
  }
  const Kernel g = identity_kernel(basis);
  const NilPoly h_eff = effective_hamiltonian(operator_kernel(h, basis), g);
  return Kernel{nil_mul(g.poly, nil_exp(h_eff * cplx(0.0, -dt)))};
}

Kernel evolve_discrete(const EvolutionJob& job) {
  if (job.slices < 1) throw std::invalid_argument("slice count must be >= 1");
  const BFBasis basis = make_bf_basis(job.algebra());
  const NilPoly mu = solve_measure(basis);
  const Kernel step = infinitesimal_kernel(job);
  Kernel acc = step;
  for (int j = 1; j < job.slices; ++j) acc = kernel_convolve(step, acc, mu);
  return acc;
}

std::vector<SweepRow> convergence_sweep(const EvolutionJob& base,
                                        const std::vector<int>& slice_counts) {
  if (slice_counts.empty()) throw std::invalid_argument("slice list must not be empty");
  const BFBasis basis = make_bf_basis(base.algebra());
  const FockRep rep = build_fock_rep(base.root);
  const CMat h = build_hamiltonian(rep, base.hamiltonian);
  const Kernel exact = operator_kernel(exact_evolution(h, base.total_time), basis);
  const CMat one = CMat::identity(base.root.k + 1);

  std::vector<SweepRow> rows;
  for (int k_steps : slice_counts) {
    EvolutionJob job = base;
    job.slices = k_steps;
    const Kernel discrete = evolve_discrete(job);
    const CMat u = kernel_to_operator(discrete, basis);
    SweepRow row;
    row.slices = k_steps;
    row.delta_t = job.delta_t();
    row.max_coeff_error = discrete.max_abs_diff(exact);
    row.unitarity_residual = (u.adjoint() * u - one).max_abs();
    rows.push_back(row);
  }
  return rows;
}

const CoefficientRow* ContinuumReport::find(const std::string& label) const {
  for (const CoefficientRow& row : rows) {
    if (row.label == label) return &row;
  }
  return nullptr;
}

ContinuumReport continuum_coefficient_report(const RootData& root, ExchangeVariant variant) {
  if (root.k < 1 || root.k > 3) {
    throw std::invalid_argument("continuum report covers k in {1, 2, 3}");
  }
  const SliceAlgebra alg{variant, root, true};
  const BFBasis basis = make_bf_basis(alg);
  const bool qc = variant == ExchangeVariant::QCommuting;
  const cplx q = root.q;
  const cplx i(0.0, 1.0);
  const int k = root.k;

  ContinuumReport report;
  report.k = k;
  report.variant = variant;

  const NilPoly g = identity_kernel_diag(basis);
  const NilPoly mu = solve_measure(basis);
  const NilPoly measure_factor = nil_mul(mu, g);
  const NilPoly log_g = nil_log(g);
  const NilPoly g_inv = nil_inv(g);
  const std::vector<cplx> action = formal_action_factor(diag_coeffs(log_g, k), alg);

  // Closed-form coefficient sets, where one is on record.
  std::vector<cplx> g_stated, mu_stated, measure_stated, boundary_stated, action_stated;
  const cplx c_stated = std::pow(2.0, -0.25);
  if (k == 1) {
    g_stated = {1.0, 1.0};
    boundary_stated = {0.0, 1.0};
    if (!qc) {
      mu_stated = {1.0, 1.0};
      measure_stated = {1.0, 2.0};  // 1/(1 - 2 zbar z) expanded
      action_stated = {1.0, 0.0};
    } else {
      measure_stated = {1.0, 0.0};  // flat Grassmann measure
      action_stated = {1.0, 0.0};
    }
  } else if (k == 2) {
    g_stated = {1.0, 1.0, 1.0};
    // The boundary term appears as the factor g itself (covered by the
    // "g" row), not in exponent form.
    if (qc) {
      mu_stated = {1.0, root.q2, root.q2};
      measure_stated = {1.0, q, 0.0};
      action_stated = {1.0, 1.0 + 2.0 * q, 0.0};
    } else {
      mu_stated = {1.0, 1.0, 1.0};
      measure_stated = {1.0, 2.0, 3.0};
      action_stated = {1.0, 1.0, 0.0};
    }
  } else {  // k == 3
    g_stated = {1.0, 1.0, c_stated, c_stated};
    if (qc) {
      measure_stated = {1.0, 1.0 + i, 2.0 * c_stated - 1.0, i * (1.0 - c_stated)};
      boundary_stated = {0.0, 1.0, c_stated - 0.5 * i, 2.0 * c_stated - i / 3.0};
      action_stated = {1.0, -(0.5 + i * c_stated), -3.0 * (2.0 * c_stated - 0.5 * i), 0.0};
    }
  }

  report.rows.push_back(make_row("g", diag_coeffs(g, k), g_stated));
  report.rows.push_back(make_row("mu", diag_coeffs(mu, k), mu_stated));
  report.rows.push_back(
      make_row("measure_factor_mu_g", diag_coeffs(measure_factor, k), measure_stated));
  report.rows.push_back(make_row("boundary_log_g", diag_coeffs(log_g, k), boundary_stated));
  report.rows.push_back(make_row("g_inverse", diag_coeffs(g_inv, k), {}));
  report.rows.push_back(make_row("action_factor", action, action_stated));

  if (k == 1) {
    // The q^2 = -1 measure identity: 1/(1 - 2 zbar z) = 1 + 2 zbar z.
    NilPoly denom = NilPoly::constant(alg, 1, 1.0);
    denom.add_term({{1, 1}}, -2.0);
    report.rows.push_back(make_row("inverse_1_minus_2zbarz", diag_coeffs(nil_inv(denom), k),
                                   {1.0, 2.0}));
  }
  return report;
}

void format_report(std::ostream& os, const ContinuumReport& report) {
  os << "continuum coefficient report: k=" << report.k << " variant="
     << (report.variant == ExchangeVariant::QCommuting ? "qcommuting" : "commuting") << "\n";
  for (const CoefficientRow& row : report.rows) {
    os << "  " << row.label << "\n    derived:";
    for (const cplx& v : row.derived) os << " " << fmt_complex(v);
    os << "\n";
    if (row.comparable) {
      os << "    stated: ";
      for (const cplx& v : row.stated) os << " " << fmt_complex(v);
      os << "\n    match:  ";
      const size_t n = std::max(row.derived.size(), row.stated.size());
      for (size_t j = 0; j < n; ++j) {
        const cplx d = j < row.derived.size() ? row.derived[j] : cplx{};
        const cplx s = j < row.stated.size() ? row.stated[j] : cplx{};
        os << " " << (std::abs(d - s) < 1e-9 ? "ok" : "DIFFERS");
      }
      os << "\n";
    } else {
      os << "    stated:  (no closed form given)\n";
    }
  }
}

}  // namespace qpath
