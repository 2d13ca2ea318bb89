#pragma once

#include "jbt/types.hpp"

namespace jbt::manifold {

/// Validate a matrix as an orthogonal projection. The input is
/// re-symmetrized ((z + z*)/2) before the idempotency and spectral checks
/// and the Hermitian adjustment is recorded on the result. Rank is the
/// number of eigenvalues above 1/2.
Projection make_projection(const ComplexMatrix& matrix,
                           double tol = kDefaultTol);

/// Rank-r projection on C^n: V V* for V the orthonormalized columns of a
/// seeded complex Gaussian matrix. Deterministic given the seed.
Projection random_projection(int n, int r, unsigned long long seed,
                             double tol = kDefaultTol);

/// Orthonormal basis of range(a) as the columns of an n x rank matrix
/// (eigenvectors with eigenvalue above 1/2). Deterministic given the input.
ComplexMatrix range_basis(const Projection& a);

/// Some frame for a (eigenvectors with eigenvalue ~1). Deterministic given
/// the input, but callers must rely only on the Frame invariants, not on
/// which frame comes back.
Frame frame_for(const Projection& a);

/// Hermitian part of the half-Peirce component of z at a: the orthogonal
/// projection of (z + z*)/2 onto the tangent space at a.
TangentVector tangent_project(const Projection& a, const ComplexMatrix& z);

/// Validate a matrix as a tangent vector at a (Hermitian, in the
/// half-eigenspace of a within tol).
TangentVector checked_tangent(const Projection& a, ComplexMatrix matrix,
                              double tol = kDefaultTol);

/// u = sum_k (alpha_k xi_k* + xi_k alpha_k*), one xi per frame atom.
/// Each xi_k must be orthogonal to range(a); xi_k = 0 and non-unit lengths
/// are fine.
TangentVector tangent_from_xi(const Frame& frame,
                              const std::vector<Vector>& xis);

/// Inverse of tangent_from_xi: xi_k = u * alpha_k.
std::vector<Vector> xi_from_tangent(const Frame& frame,
                                    const TangentVector& u);

/// Singular decomposition of a tangent vector via the corner block
/// B = (I - a) u a: u = sum_k rho_k (alpha_k xi_k* + xi_k alpha_k*) with
/// rho ascending and values below tol * max(|u|, 1) dropped.
SpectralData spectral_decompose(const TangentVector& u);

/// Frame whose leading atoms are alpha_k alpha_k* from spectral_decompose,
/// completed to rank(a) atoms by an orthonormal basis of the rest of
/// range(a).
Frame associated_frame(const TangentVector& u);

/// Same, reusing an already computed decomposition.
Frame associated_frame(const SpectralData& data);

/// x = alpha xi* + xi alpha* for unit orthogonal alpha, xi: the minimal
/// tripotents of the half-eigenspace of alpha alpha*.
ComplexMatrix minimal_tripotent_half(const Vector& alpha, const Vector& xi,
                                     double tol = kDefaultTol);

/// True iff x y* = 0 and y* x = 0 within tol (absolute).
bool are_orthogonal_tripotents(const ComplexMatrix& x, const ComplexMatrix& y,
                               double tol = kDefaultTol);

/// lambda_k = alpha_k* b alpha_k, clamped to [0, 1].
std::vector<double> lambda_coefficients(const Frame& frame,
                                        const Projection& b);

/// True iff the compression of b to range(a) has smallest singular value
/// >= eps: the domain on which the geodesic joining a to b is unique.
bool is_in_normal_nbhd(const Projection& a, const Projection& b,
                       double eps = 1e-10);

/// Riemann inner product at a: (1/r) sum_k Re <v_k, u_k>_{a_k} over the
/// frame associated with u. Frame-independent, symmetric, positive
/// definite.
double metric(const Projection& a, const TangentVector& u,
              const TangentVector& v);

/// The same sum evaluated over an explicit frame of the base point, with
/// u_k, v_k the half-Peirce components at each atom. The value does not
/// depend on the frame; exposing the frame lets tests check exactly that.
double metric_over_frame(const Frame& frame, const TangentVector& u,
                         const TangentVector& v);

/// Basis (a_k, u_k, u_k^(2)) of the rank-3 Jordan algebra attached to a
/// minimal projection a_k and a minimal tripotent u_k of its
/// half-eigenspace; u_k^(2) = {u_k a_k u_k}.
std::vector<ComplexMatrix> jordan_algebra_basis(const Projection& a_k,
                                                const ComplexMatrix& u_k);

}  // namespace jbt::manifold
