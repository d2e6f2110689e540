#pragma once

// Bargmann-Fock machinery on top of the nilpotent engine: the function
// basis psi_n = zbar^n / sqrt([n]_sym!), the orthonormalizing measure, the
// identity kernel, operator kernels and their mu-weighted convolution,
// effective Hamiltonians, normal symbols, and the ladder realization with
// the deformed "differential" operator Dbar.

#include <vector>

#include "qpath/cmat.hpp"
#include "qpath/fock.hpp"
#include "qpath/nilalg.hpp"

namespace qpath {

struct BFBasis {
  RootData root;
  SliceAlgebra algebra;
  std::vector<NilPoly> psi;  // one-slice polys, psi[n] = zbar^n/sqrt([n]!)
};

BFBasis make_bf_basis(const SliceAlgebra& algebra);

// Two-slice polynomial in (zbar_out, z_in); slice 0 is the incoming
// variable, slice 1 the outgoing conjugated one.
struct Kernel {
  NilPoly poly;

  cplx coeff(int out_pow, int in_pow) const {
    return poly.coeff({{0, in_pow}, {out_pow, 0}});
  }
  double max_abs_diff(const Kernel& o) const { return poly.max_abs_diff(o.poly); }
};

// Scalar product <f, g> = integral of conj(f) mu g over the single slice,
// factors multiplied in that textual order.
cplx scalar_product(const NilPoly& f, const NilPoly& mu, const NilPoly& g);

// Diagonal measure mu = sum_j mu_j zbar^j z^j making the basis orthonormal,
// obtained by solving the linear system <psi_n, mu psi_m> = delta_nm.
// Throws std::runtime_error if the system is singular.
NilPoly solve_measure(const BFBasis& basis);

// g = sum_n psi_n(zbar_out) conj(psi_n)(z_in); the convolution unit.
Kernel identity_kernel(const BFBasis& basis);

// Kernel with coefficient <psi_m|A|psi_n>/sqrt([m]! [n]!) on
// zbar_out^m z_in^n, so that the identity operator maps to g.
Kernel operator_kernel(const CMat& a, const BFBasis& basis);

// Inverse of operator_kernel.
CMat kernel_to_operator(const Kernel& kernel, const BFBasis& basis);

// (K1 * K2)(zbar_out, z_in) = integral over the intermediate slice of
// K1(zbar_out, z) mu(zbar z) K2(zbar, z_in), multiplied in exactly that
// order.  Satisfies operator_kernel(A) * operator_kernel(B) =
// operator_kernel(A B).
Kernel kernel_convolve(const Kernel& later, const Kernel& earlier, const NilPoly& mu);

// H_eff = g^{-1} H_kernel via nilpotent inversion.
NilPoly effective_hamiltonian(const Kernel& h_kernel, const Kernel& g);

// Coefficients alpha_{mn} of the normal-ordered expansion
// A = sum alpha_{mn} raise^m lower^n, solved per matrix diagonal.
CMat normal_order_coefficients(const CMat& a, const CMat& raise, const CMat& lower);

// Substitutes b_bar -> zbar, b -> z in the normal-ordered expansion of A.
NilPoly normal_symbol(const CMat& a, const BFBasis& basis);

// Verifies the rule relating kernels and normal symbols through the
// measure: kernel(A) = symbol(A) * mu, with the symbol taken in the
// hermitian-conjugate ladder pair (multiplication by zbar and its adjoint
// Dbar) and A diagonal.  Exact in the FullyCommuting variant; returns the
// max residual over the Hamiltonian family.
double symbol_kernel_relation_check(const BFBasis& basis);

struct DbarReport {
  std::vector<double> ladder;     // from polynomial_fock(2)
  double relation_residual = 0;   // Dbar zbar + zbar^2 Dbar^2 - 1 on the basis
  double adjoint_residual = 0;    // <zbar f, g> vs <f, Dbar g>
};

// k = 2 realization of the ladder algebra on the function basis with the
// FullyCommuting scalar product; throws std::invalid_argument otherwise.
DbarReport dbar_realization_check(const RootData& root);

}  // namespace qpath
