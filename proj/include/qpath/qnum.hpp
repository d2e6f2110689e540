#pragma once

// Root-of-unity arithmetic and the two q-number conventions.
//
// Throughout, q is the principal primitive root exp(i*pi/(k+1)), so that
// q^(k+1) = -1 and q^2 generates a cyclic group of order k+1.  The
// "symmetric" q-number [n] = (q^n - q^-n)/(q - q^-1) is real and positive
// for 1 <= n <= k; the "box" q-number [n] = (q^2n - 1)/(q^2 - 1) carries a
// phase, [n]_box = q^(n-1) * [n]_sym.

#include <complex>

namespace qpath {

using cplx = std::complex<double>;

struct RootData {
  int k = 0;   // q^(k+1) = -1
  cplx q;      // exp(i*pi/(k+1))
  cplx q2;     // q^2
};

// Builds RootData for the principal root.  Throws std::invalid_argument for
// k < 1 (k = 0 would give a one-state space).
RootData q_root(int k);

// q^e for any integer exponent, computed from the reduced angle so that
// large |e| stays accurate.
cplx q_pow(const RootData& r, long long e);

// Symmetric q-number (q^n - q^-n)/(q - q^-1) = sin(n*pi/(k+1))/sin(pi/(k+1)).
// Real by construction; returned as complex for uniformity.
cplx q_num_sym(int n, const RootData& r);

// Box q-number (q^2n - 1)/(q^2 - 1).
cplx q_num_box(int n, const RootData& r);

// Products [1][2]...[n]; the empty product is 1.  Both vanish at n = k+1.
cplx q_factorial_sym(int n, const RootData& r);
cplx q_factorial_box(int n, const RootData& r);

// Default residual tolerance for equality checks on derived quantities.
inline constexpr double kDefaultTol = 1e-10;

}  // namespace qpath
