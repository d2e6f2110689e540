#include "qpath/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

#include "qpath/bfrep.hpp"
#include "qpath/format.hpp"
#include "qpath/pathint.hpp"

namespace qpath {

namespace {

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument("cannot parse number '" + text + "'");
  }
  return v;
}

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;

  bool pass() const { return residual < threshold; }
};

cplx random_unit_complex(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

CMat random_matrix(int d, std::mt19937& rng) {
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = random_unit_complex(rng);
  return m;
}

Kernel random_kernel(const BFBasis& basis, std::mt19937& rng) {
  return operator_kernel(random_matrix(basis.root.k + 1, rng), basis);
}

NilPoly random_poly(const SliceAlgebra& alg, cplx constant, std::mt19937& rng) {
  NilPoly p = NilPoly::constant(alg, 1, constant);
  for (int m = 0; m <= alg.root.k; ++m) {
    for (int n = 0; n <= alg.root.k; ++n) {
      if (m == 0 && n == 0) continue;
      p.add_term({{m, n}}, 0.5 * random_unit_complex(rng));
    }
  }
  return p;
}

std::vector<CheckResult> verify_suite(int k, ExchangeVariant variant, double tol) {
  std::vector<CheckResult> checks;
  const RootData root = q_root(k);
  const FockRep rep = build_fock_rep(root);
  const SliceAlgebra alg{variant, root, true};
  const BFBasis basis = make_bf_basis(alg);
  std::mt19937 rng(20260809u + static_cast<unsigned>(k));

  auto add = [&checks, tol](const std::string& name, double residual, double threshold = -1.0) {
    checks.push_back({name, residual, threshold < 0.0 ? tol : threshold});
  };

  // q-number identities.
  {
    double res = 0.0;
    for (int n = 0; n <= k + 1; ++n) {
      res = std::max(res, std::abs(q_num_box(n, root) - q_pow(root, n - 1) * q_num_sym(n, root)));
    }
    add("qnum.box_sym_identity", res);
    add("qnum.nilpotency", std::max(std::abs(q_num_sym(k + 1, root)), std::abs(q_num_box(k + 1, root))));
  }

  // Operator relations.
  add("fock.CR1", verify_relation(rep, RelationId::CR1));
  add("fock.CR2", verify_relation(rep, RelationId::CR2));
  add("fock.conjugation", verify_relation(rep, RelationId::ConjB));
  add("fock.box_number", verify_relation(rep, RelationId::BoxNumber));
  if (k == 1) add("fock.CR4", verify_relation(rep, RelationId::CR4));
  if (k == 2) add("fock.CR15", verify_relation(rep, RelationId::CR15));

  if (k == 2) {
    const cplx q = root.q;
    const HamiltonianSpec couples[] = {{1.0, -q, 1.0}, {1.0, 1.0 - 2.0 * q, 1.0}, {0.0, -root.q2, 1.0}};
    double res = 0.0;
    for (const auto& spec : couples) res = std::max(res, hermiticity_classify(rep, spec).residual);
    add("fock.hermitian_couples", res);
    int hermitian_count = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const HamiltonianSpec spec{random_unit_complex(rng), random_unit_complex(rng), 1.0};
      if (hermiticity_classify(rep, spec).hermitian) ++hermitian_count;
    }
    add("fock.hermitian_random_scan", static_cast<double>(hermitian_count), 1.5);
  }

  // Evolution oracle: unitarity on a random hermitian generator, plus the
  // group law.  The two-coupling family is only hermitian for special
  // couples, so the generator is built directly.
  {
    const CMat m = random_matrix(rep.dim, rng);
    const CMat h = m + m.adjoint();
    const CMat u1 = exact_evolution(h, 0.7);
    const CMat u2 = exact_evolution(h, 0.3);
    const CMat u = exact_evolution(h, 1.0);
    add("fock.evolution_unitarity",
        (u.adjoint() * u - CMat::identity(rep.dim)).max_abs());
    add("fock.evolution_group_law", (u1 * u2 - u).max_abs());
  }

  // Ladder algebras with (n+1)-dimensional Fock spaces.
  for (int n = 1; n <= 4; ++n) {
    const PolynomialFock pf = polynomial_fock(n);
    add("fock.ladder_algebra_n" + std::to_string(n),
        std::max(pf.relation_residual, pf.truncation));
  }

  // Measure, orthonormality, convolution unit.
  const NilPoly mu = solve_measure(basis);
  {
    double res = 0.0;
    for (int n = 0; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        const cplx s = scalar_product(basis.psi[n], mu, basis.psi[m]);
        res = std::max(res, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    }
    add("bfrep.orthonormality", res);
  }
  const Kernel g = identity_kernel(basis);
  add("bfrep.convolution_unit_gg", kernel_convolve(g, g, mu).max_abs_diff(g));
  {
    double res = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Kernel kr = random_kernel(basis, rng);
      res = std::max(res, kernel_convolve(g, kr, mu).max_abs_diff(kr));
      res = std::max(res, kernel_convolve(kr, g, mu).max_abs_diff(kr));
    }
    add("bfrep.convolution_unit_random", res);
  }
  {
    double res = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const CMat a = random_matrix(rep.dim, rng);
      const CMat b = random_matrix(rep.dim, rng);
      const Kernel lhs = kernel_convolve(operator_kernel(a, basis), operator_kernel(b, basis), mu);
      res = std::max(res, lhs.max_abs_diff(operator_kernel(a * b, basis)));
    }
    add("bfrep.kernel_homomorphism", res, std::max(tol, 1e-10));
  }

  // Nilpotent series round trips.
  {
    double res = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const NilPoly p = random_poly(alg, 1.0, rng);
      res = std::max(res, nil_exp(nil_log(p)).max_abs_diff(p));
      const NilPoly one = NilPoly::constant(alg, 1, 1.0);
      res = std::max(res, nil_mul(p, nil_inv(p)).max_abs_diff(one));
    }
    add("nilalg.series_round_trips", res);
  }

  // Deformed derivative: dbar zbar - q^2 zbar dbar = 1 on every psi_n.
  {
    const SliceAlgebra fc{ExchangeVariant::FullyCommuting, root, true};
    const BFBasis fc_basis = make_bf_basis(fc);
    const NilPoly zbar = NilPoly::variable(fc, 1, 0, true);
    double res = 0.0;
    for (const NilPoly& psi : fc_basis.psi) {
      const NilPoly lhs = q_derivative(nil_mul(zbar, psi), 0, true) -
                          nil_mul(zbar, q_derivative(psi, 0, true)) * root.q2;
      res = std::max(res, lhs.max_abs_diff(psi));
    }
    add("nilalg.derivative_relation", res);
  }

  if (k == 1 && variant == ExchangeVariant::QCommuting) {
    // Anticommuting reduction: z zbar + zbar z = 0 on same and distinct
    // slices, zbar's symmetric.
    const NilPoly z0 = NilPoly::variable(alg, 2, 0, false);
    const NilPoly zb0 = NilPoly::variable(alg, 2, 0, true);
    const NilPoly zb1 = NilPoly::variable(alg, 2, 1, true);
    double res = (nil_mul(z0, zb0) + nil_mul(zb0, z0)).max_abs();
    res = std::max(res, (nil_mul(z0, zb1) + nil_mul(zb1, z0)).max_abs());
    res = std::max(res, (nil_mul(zb0, zb1) - nil_mul(zb1, zb0)).max_abs());
    add("nilalg.grassmann_reduction", res);
  }

  if (k == 2) {
    const DbarReport dbar = dbar_realization_check(root);
    add("bfrep.dbar_relation", dbar.relation_residual);
    add("bfrep.dbar_adjointness", dbar.adjoint_residual);
    const SliceAlgebra fc{ExchangeVariant::FullyCommuting, root, true};
    add("bfrep.symbol_kernel_relation", symbol_kernel_relation_check(make_bf_basis(fc)));
  }

  return checks;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const ExchangeVariant variant = parse_variant(cfg.variant);
  const std::vector<CheckResult> checks = verify_suite(cfg.k, variant, cfg.tol);
  bool all_pass = true;
  for (const CheckResult& c : checks) {
    out << (c.pass() ? "PASS" : "FAIL") << " " << c.name
        << " residual=" << fmt_g15(c.residual) << " threshold=" << fmt_g15(c.threshold)
        << "\n";
    all_pass = all_pass && c.pass();
  }
  out << (all_pass ? "all checks passed" : "CHECKS FAILED") << " (k=" << cfg.k
      << ", variant=" << cfg.variant << ")\n";
  return all_pass ? 0 : 1;
}

void write_poly(const RunConfig& cfg, const NilPoly& poly, std::ostream& out) {
  if (cfg.format == "json") {
    write_json(out, poly);
  } else {
    out << "exponents,re,im\n";
    write_csv(out, poly);
  }
}

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
  const SliceAlgebra alg{parse_variant(cfg.variant), q_root(cfg.k), true};
  write_poly(cfg, solve_measure(make_bf_basis(alg)), out);
  return 0;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  if (cfg.slices.size() != 1) {
    throw std::invalid_argument("kernel requires exactly one --slices value");
  }
  EvolutionJob job;
  job.root = q_root(cfg.k);
  job.variant = parse_variant(cfg.variant);
  job.hamiltonian = {parse_complex_token(cfg.u, job.root), parse_complex_token(cfg.v, job.root),
                     cfg.omega};
  job.total_time = cfg.time;
  job.slices = cfg.slices.front();
  write_poly(cfg, evolve_discrete(job).poly, out);
  return 0;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.slices.empty()) throw std::invalid_argument("converge requires --slices");
  for (size_t i = 1; i < cfg.slices.size(); ++i) {
    if (cfg.slices[i] <= cfg.slices[i - 1]) {
      throw std::invalid_argument("slice list must be strictly ascending");
    }
  }
  EvolutionJob base;
  base.root = q_root(cfg.k);
  base.variant = parse_variant(cfg.variant);
  base.hamiltonian = {parse_complex_token(cfg.u, base.root), parse_complex_token(cfg.v, base.root),
                      cfg.omega};
  base.total_time = cfg.time;

  const FockRep rep = build_fock_rep(base.root);
  if (!hermiticity_classify(rep, base.hamiltonian).hermitian) {
    err << "warning: (u, v) does not give a hermitian Hamiltonian; the discrete kernels "
           "will not approach a unitary evolution\n";
  }

  const std::vector<SweepRow> rows = convergence_sweep(base, cfg.slices);
  if (cfg.format == "json") {
    out << "[";
    for (size_t i = 0; i < rows.size(); ++i) {
      out << (i ? "," : "") << "\n  {\"K\": " << rows[i].slices
          << ", \"delta_t\": " << fmt_g15(rows[i].delta_t)
          << ", \"max_coeff_error\": " << fmt_g15(rows[i].max_coeff_error)
          << ", \"unitarity_residual\": " << fmt_g15(rows[i].unitarity_residual) << "}";
    }
    out << "\n]\n";
  } else {
    out << "K,delta_t,max_coeff_error,unitarity_residual\n";
    for (const SweepRow& row : rows) {
      out << row.slices << "," << fmt_g15(row.delta_t) << ","
          << fmt_g15(row.max_coeff_error) << "," << fmt_g15(row.unitarity_residual) << "\n";
    }
  }
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].max_coeff_error > rows[i - 1].max_coeff_error + 1e-15) {
      err << "error did not decrease between K=" << rows[i - 1].slices << " and K="
          << rows[i].slices << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const RootData root = q_root(cfg.k);
  format_report(out, continuum_coefficient_report(root, parse_variant(cfg.variant)));
  if (cfg.k == 2) {
    const SliceAlgebra fc{ExchangeVariant::FullyCommuting, root, true};
    out << "symbol-kernel relation (kernel = symbol * mu, commuting variables): residual="
        << fmt_g15(symbol_kernel_relation_check(make_bf_basis(fc))) << "\n";
  }
  return 0;
}

}  // namespace

cplx parse_complex_token(const std::string& text, const RootData& root) {
  if (text == "q") return root.q;
  if (text == "-q") return -root.q;
  if (text == "q^2") return root.q2;
  if (text == "-q^2") return -root.q2;
  if (text == "1-2q") return 1.0 - 2.0 * root.q;
  const size_t comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

ExchangeVariant parse_variant(const std::string& text) {
  if (text == "commuting") return ExchangeVariant::FullyCommuting;
  if (text == "qcommuting") return ExchangeVariant::QCommuting;
  throw std::invalid_argument("variant must be 'commuting' or 'qcommuting'");
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
      sink = &file;
    }
    if (cfg.command == "verify") return cmd_verify(cfg, *sink);
    if (cfg.command == "measure") return cmd_measure(cfg, *sink);
    if (cfg.command == "kernel") return cmd_kernel(cfg, *sink);
    if (cfg.command == "converge") return cmd_converge(cfg, *sink, err);
    if (cfg.command == "report") return cmd_report(cfg, *sink);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qpath
