#pragma once

// Discrete time-slice evolution: infinitesimal kernels, K-fold mu-weighted
// convolution, convergence measurement against the exact matrix
// exponential, and the coefficient report comparing derived per-slice
// quantities with the closed continuum expressions.

#include <string>
#include <vector>

#include "qpath/bfrep.hpp"

namespace qpath {

struct EvolutionJob {
  RootData root;
  ExchangeVariant variant = ExchangeVariant::QCommuting;
  HamiltonianSpec hamiltonian;
  double total_time = 1.0;
  int slices = 1;  // K
  // Replace g exp(-i H_eff dt) by the kernel of exp(-i H dt); isolates
  // convolution error (zero) from discretization error.
  bool exact_step = false;

  double delta_t() const { return total_time / slices; }
  SliceAlgebra algebra() const { return SliceAlgebra{variant, root, true}; }
};

// g(zbar z) exp(-i H_eff dt), truncated by nilpotency, or the exact-step
// kernel when job.exact_step is set.
Kernel infinitesimal_kernel(const EvolutionJob& job);

// Left-fold of kernel_convolve over K copies of the infinitesimal kernel;
// only two slices are ever live.
Kernel evolve_discrete(const EvolutionJob& job);

struct SweepRow {
  int slices = 0;
  double delta_t = 0.0;
  double max_coeff_error = 0.0;
  double unitarity_residual = 0.0;
};

// One row per K: coefficient error against operator_kernel(exp(-iHT)) and
// unitarity defect of the operator reconstructed from the discrete kernel.
std::vector<SweepRow> convergence_sweep(const EvolutionJob& base,
                                        const std::vector<int>& slice_counts);

// One named coefficient comparison: derived values by power of (zbar z),
// and the reference values of the closed-form continuum expressions where
// available.
struct CoefficientRow {
  std::string label;
  std::vector<cplx> derived;
  std::vector<cplx> stated;  // empty if no closed form is given
  bool comparable = false;
  double max_mismatch = 0.0;
};

struct ContinuumReport {
  int k = 0;
  ExchangeVariant variant = ExchangeVariant::FullyCommuting;
  std::vector<CoefficientRow> rows;

  const CoefficientRow* find(const std::string& label) const;
};

// Exact nilpotent-identity ingredients of the continuum limit: the
// diagonal coefficients of g, mu, mu*g (the per-slice measure factor),
// log g (the boundary exponent), g^{-1}, and the formal-derivative action
// factor, each set against its closed-form counterpart for k in {1,2,3}.
// Mismatches are reported, not asserted.
ContinuumReport continuum_coefficient_report(const RootData& root, ExchangeVariant variant);

void format_report(std::ostream& os, const ContinuumReport& report);

}  // namespace qpath
