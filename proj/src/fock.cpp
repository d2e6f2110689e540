#include "qpath/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qpath {

FockRep build_fock_rep(const RootData& r) {
  FockRep rep;
  rep.root = r;
  rep.dim = r.k + 1;
  const int d = rep.dim;
  rep.N = CMat(d, d);
  rep.b = CMat(d, d);
  rep.b_bar = CMat(d, d);
  for (int n = 0; n < d; ++n) rep.N(n, n) = static_cast<double>(n);
  for (int n = 1; n < d; ++n) {
    const double root_qn = std::sqrt(q_num_sym(n, r).real());
    rep.b(n - 1, n) = q_pow(r, n - 1) * root_qn;  // b|n> = q^(n-1) sqrt([n]) |n-1>
    rep.b_bar(n, n - 1) = root_qn;                // b_bar|n-1> = sqrt([n]) |n>
  }
  // a = q^(-N/2) b, so a|n> = q^((n-1)/2) sqrt([n]) |n-1>.
  rep.a = CMat(d, d);
  const double half_theta = 0.5 * std::arg(r.q);
  for (int n = 1; n < d; ++n) {
    rep.a(n - 1, n) =
        std::polar(1.0, (n - 1) * half_theta) * std::sqrt(q_num_sym(n, r).real());
  }
  rep.a_dag = rep.a.adjoint();
  return rep;
}

double verify_relation(const FockRep& rep, RelationId relation) {
  const RootData& r = rep.root;
  const int d = rep.dim;
  const CMat one = CMat::identity(d);
  switch (relation) {
    case RelationId::CR1:
      return (rep.b * rep.b_bar - rep.b_bar * rep.b * r.q2 - one).max_abs();
    case RelationId::CR2: {
      std::vector<cplx> diag(d);
      for (int n = 0; n < d; ++n) diag[n] = q_pow(r, 2LL * n);
      return (rep.b * rep.b_bar - rep.b_bar * rep.b - CMat::diagonal(diag)).max_abs();
    }
    case RelationId::CR4:
      if (r.k != 1) throw std::invalid_argument("CR4 requires k = 1");
      return (rep.b * rep.b_bar + rep.b_bar * rep.b - one).max_abs();
    case RelationId::CR15:
      if (r.k != 2) throw std::invalid_argument("CR15 requires k = 2");
      return (rep.a * rep.a_dag + rep.a_dag.pow(2) * rep.a.pow(2) - one).max_abs();
    case RelationId::ConjB: {
      std::vector<cplx> diag(d);
      for (int n = 0; n < d; ++n) diag[n] = q_pow(r, -n);
      return (rep.b.adjoint() - rep.b_bar * CMat::diagonal(diag)).max_abs();
    }
    case RelationId::BoxNumber: {
      std::vector<cplx> diag(d);
      for (int n = 0; n < d; ++n) diag[n] = q_num_box(n, r);
      return (rep.b_bar * rep.b - CMat::diagonal(diag)).max_abs();
    }
  }
  throw std::invalid_argument("unknown relation id");
}

CMat build_hamiltonian(const FockRep& rep, const HamiltonianSpec& spec) {
  const CMat nb = rep.b_bar * rep.b;
  const CMat nb2 = rep.b_bar.pow(2) * rep.b.pow(2);
  return (nb * spec.u + nb2 * spec.v) * cplx(spec.omega, 0.0);
}

HermiticityReport hermiticity_classify(const FockRep& rep, const HamiltonianSpec& spec,
                                       double tol) {
  const CMat h = build_hamiltonian(rep, spec);
  HermiticityReport report;
  report.residual = (h - h.adjoint()).max_abs();
  report.hermitian = report.residual < tol;
  return report;
}

CMat exact_evolution(const CMat& h, double t) {
  return mat_exp(h * cplx(0.0, -t));
}

PolynomialFock polynomial_fock(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  PolynomialFock result;
  result.n = n;
  // |c_(m+1)|^2 = 1 - |c_m c_(m-1) ... c_(m-n+1)|^2 with c_j = 0 for j <= 0.
  std::vector<double> csq(n + 2, 0.0);
  for (int m = 0; m <= n; ++m) {
    double prod = 1.0;
    if (m - n + 1 <= 0) {
      prod = 0.0;  // the window reaches c_0
    } else {
      for (int t = m - n + 1; t <= m; ++t) prod *= csq[t];
    }
    const double val = 1.0 - prod;
    if (val < -1e-12) throw std::runtime_error("inconsistent ladder algebra: |c|^2 < 0");
    csq[m + 1] = std::max(val, 0.0);
  }
  result.ladder.resize(n);
  for (int j = 1; j <= n; ++j) result.ladder[j - 1] = std::sqrt(csq[j]);
  result.truncation = std::sqrt(csq[n + 1]);

  const int d = n + 1;
  result.alpha = CMat(d, d);
  for (int j = 1; j <= n; ++j) result.alpha(j - 1, j) = result.ladder[j - 1];
  result.alpha_dag = result.alpha.adjoint();
  result.relation_residual = (result.alpha * result.alpha_dag +
                              result.alpha_dag.pow(n) * result.alpha.pow(n) -
                              CMat::identity(d))
                                 .max_abs();
  return result;
}

}  // namespace qpath
