#pragma once

// Finite-dimensional matrix representations of the deformed oscillator at a
// root of unity, the two-coupling Hamiltonian family, hermiticity
// classification, the ladder algebras with (n+1)-dimensional Fock spaces,
// and the exact matrix-exponential evolution used as the oracle for the
// discrete time-slice engine.

#include <vector>

#include "qpath/cmat.hpp"
#include "qpath/qnum.hpp"

namespace qpath {

// States n = 0..k.  b lowers with an extra q-phase, b_bar raises; a is the
// undressed lowering operator with a_dag its true conjugate transpose.
// For k >= 2, b_bar is deliberately NOT the conjugate transpose of b.
struct FockRep {
  RootData root;
  int dim = 0;  // k + 1
  CMat N;
  CMat a;
  CMat a_dag;
  CMat b;
  CMat b_bar;
};

FockRep build_fock_rep(const RootData& r);

enum class RelationId {
  CR1,        // b b_bar - q^2 b_bar b = 1
  CR2,        // b b_bar - b_bar b = q^(2N)
  CR4,        // b b_bar + b_bar b = 1            (k = 1 only)
  CR15,       // a a_dag + a_dag^2 a^2 = 1        (k = 2 only)
  ConjB,      // b^dag = b_bar q^(-N)
  BoxNumber,  // b_bar b = [N]_box
};

// Max absolute entry of (LHS - RHS) for the requested relation.  Throws
// std::invalid_argument when the relation is restricted to a different k.
double verify_relation(const FockRep& rep, RelationId relation);

struct HamiltonianSpec {
  cplx u;
  cplx v;
  double omega = 1.0;
};

// H = omega (u b_bar b + v b_bar^2 b^2); diagonal in the Fock basis.
CMat build_hamiltonian(const FockRep& rep, const HamiltonianSpec& spec);

struct HermiticityReport {
  bool hermitian = false;
  double residual = 0.0;  // max entry of H - H^dag
};

HermiticityReport hermiticity_classify(const FockRep& rep, const HamiltonianSpec& spec,
                                       double tol = kDefaultTol);

// exp(-i H T).
CMat exact_evolution(const CMat& h, double t);

// Fock representation of alpha alpha^dag + (alpha^dag)^n alpha^n = 1.
// The ladder coefficients c_1..c_n are fixed real nonnegative; c_(n+1) = 0
// truncates the space at dimension n+1.
struct PolynomialFock {
  int n = 0;
  std::vector<double> ladder;  // c_1..c_n
  double truncation = 0.0;     // |c_(n+1)|, expected 0
  CMat alpha;
  CMat alpha_dag;
  double relation_residual = 0.0;
};

// Throws std::runtime_error if the recursion ever asks for a negative
// squared coefficient (an inconsistent algebra; does not happen here).
PolynomialFock polynomial_fock(int n);

}  // namespace qpath
