#pragma once

#include "jbt/types.hpp"

#include <vector>

// Independent verification paths. Nothing here may call into geodesy or
// manifold: each oracle rebuilds what it needs from the ternary product
// and raw matrix operations, so agreement with the main formulas is
// meaningful evidence.

namespace jbt::oracle {

/// Principal angles between the ranges, ascending: atan2 of the paired
/// singular values of the sine and cosine matrices built from orthonormal
/// range bases (Bjorck-Golub).
std::vector<double> principal_angles(const Projection& a,
                                     const Projection& b);

/// exp(t Omega) a exp(-t Omega) with Omega = u a - a u, via the
/// eigendecomposition of the skew-Hermitian Omega.
Projection commutator_flow(const Projection& a, const TangentVector& u,
                           double t);

/// Truncated superoperator exponential: sum over m < terms of
/// t^m/m! k_u^m(a), by repeated application of the derivation k_u.
ComplexMatrix operator_flow_series(const Projection& a,
                                   const TangentVector& u, double t,
                                   int terms);

}  // namespace jbt::oracle
