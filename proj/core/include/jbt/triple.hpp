#pragma once

#include "jbt/types.hpp"

#include <tuple>

namespace jbt::triple {

/// Ternary product of L(H): {xyz} = (x y* z + z y* x) / 2.
/// Symmetric in (x, z), linear in x and z, conjugate-linear in y.
ComplexMatrix triple_product(const ComplexMatrix& x, const ComplexMatrix& y,
                             const ComplexMatrix& z);

/// Box operator a [] b applied to z: {abz}.
ComplexMatrix box_apply(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ComplexMatrix& z);

/// Quadratic operator Q(e)z = {eze} = e z* e. Conjugate-linear in z.
ComplexMatrix q_apply(const ComplexMatrix& e, const ComplexMatrix& z);

bool is_tripotent(const ComplexMatrix& e, double tol = kDefaultTol);

enum class PeirceIndex { kOne, kHalf, kZero };

/// Peirce projection of z onto the k-eigenspace of e [] e, computed from
/// the quadratic/box formulas:
///   P_1 = Q(e)^2,  P_1/2 = 2(e [] e - Q(e)^2),  P_0 = Id - 2 e [] e + Q(e)^2.
ComplexMatrix peirce_project(const Tripotent& e, PeirceIndex k,
                             const ComplexMatrix& z);

/// All three Peirce components (z_1, z_half, z_0); their sum is z.
std::tuple<ComplexMatrix, ComplexMatrix, ComplexMatrix> peirce_decompose(
    const Tripotent& e, const ComplexMatrix& z);

/// Joint Peirce component Z_ij of z relative to a pairwise orthogonal
/// family (e_1, ..., e_r). Indices run over 0..r where 0 denotes the
/// annihilator; (i, j) and (j, i) name the same component. The components
/// over i <= j sum to z.
ComplexMatrix joint_peirce_project(const std::vector<Tripotent>& frame, int i,
                                   int j, const ComplexMatrix& z);

/// Binary product x o y := {xey} of the Jordan algebra attached to e.
ComplexMatrix jordan_product(const Tripotent& e, const ComplexMatrix& x,
                             const ComplexMatrix& y);

/// Involution x^# := {exe} of the unital JB*-algebra Z_1(e).
/// Requires x in Z_1(e).
ComplexMatrix sharp(const Tripotent& e, const ComplexMatrix& x);

/// Scalar c with {euv} = c e at a minimal tripotent e (rank one).
/// Conjugate-symmetric and positive definite on the half-eigenspace of e.
/// Requires u, v in Z_1/2(e); a large residual |{euv} - c e| signals
/// corrupted inputs.
Complex levi_form(const Tripotent& e, const ComplexMatrix& u,
                  const ComplexMatrix& v);

/// Derivation k_u := 2(u [] e - e [] u) applied to z. For a projection e
/// and Hermitian u this is the commutator [ue - eu, z].
ComplexMatrix k_operator_apply(const ComplexMatrix& e, const ComplexMatrix& u,
                               const ComplexMatrix& z);

}  // namespace jbt::triple
