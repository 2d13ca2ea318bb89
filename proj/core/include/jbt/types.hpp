#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jbt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default validation tolerance. Two orders of magnitude above the
/// eigensolver error floor at n <= 64; overridable everywhere.
inline constexpr double kDefaultTol = 1e-10;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shape, failed validation, schema violation.
struct ValidationError : Error {
  using Error::Error;
};

/// Mathematical precondition failure: point outside the normal
/// neighbourhood, tangent vector outside the injectivity domain.
struct DomainError : Error {
  using Error::Error;
};

/// Operator norm (largest singular value).
double operator_norm(const ComplexMatrix& m);

double hermiticity_residual(const ComplexMatrix& m);

void require_square(const ComplexMatrix& m, const char* who);
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* who);

/// Partial isometry e with {eee} = e, validated to
/// |{eee} - e| <= tol * (1 + |e|).
struct Tripotent {
  ComplexMatrix matrix;
  double tol = kDefaultTol;

  static Tripotent checked(ComplexMatrix m, double tol = kDefaultTol);
  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Hermitian idempotent of recorded rank r.
struct Projection {
  ComplexMatrix matrix;
  int rank = 0;
  double tol = kDefaultTol;
  double herm_residual = 0.0;  // measured on the raw input
  double idem_residual = 0.0;  // after re-symmetrization

  int dim() const { return static_cast<int>(matrix.rows()); }
  Tripotent as_tripotent() const { return Tripotent{matrix, tol}; }
};

/// Family of rank-1 atoms a_k = alpha_k alpha_k^* summing to `base`.
struct Frame {
  Projection base;
  std::vector<Projection> atoms;
  std::vector<Vector> vectors;

  int size() const { return static_cast<int>(atoms.size()); }
};

/// Hermitian element of the half-eigenspace of the base projection:
/// u = a u (I - a) + (I - a) u a.
struct TangentVector {
  Projection base;
  ComplexMatrix matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Singular data of a tangent vector: u = sum_k rho_k u_k with pairwise
/// orthogonal minimal tripotents u_k = alpha_k xi_k^* + xi_k alpha_k^*,
/// alpha_k in range(a), xi_k in range(a)^perp, rho ascending.
struct SpectralData {
  Projection base;
  std::vector<double> singular_values;  // ascending
  std::vector<ComplexMatrix> tripotents;
  std::vector<Vector> alphas;
  std::vector<Vector> xis;

  int count() const { return static_cast<int>(singular_values.size()); }
  double max_singular_value() const {
    return singular_values.empty() ? 0.0 : singular_values.back();
  }
};

}  // namespace jbt
