#include "jbt/manifold.hpp"

#include "jbt/triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace jbt::manifold {

ComplexMatrix range_basis(const Projection& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix);
  const int n = a.dim();
  ComplexMatrix basis(n, a.rank);
  int out = 0;
  for (int k = 0; k < n; ++k) {
    if (es.eigenvalues()(k) > 0.5) {
      if (out == a.rank) {
        throw ValidationError("range_basis: more eigenvalues above 1/2 than "
                              "the recorded rank");
      }
      basis.col(out++) = es.eigenvectors().col(k);
    }
  }
  if (out != a.rank) {
    throw ValidationError("range_basis: fewer eigenvalues above 1/2 than "
                          "the recorded rank");
  }
  return basis;
}

namespace {

void require_based_at(const Projection& a, const TangentVector& u,
                      const char* who) {
  require_same_dim(a.matrix, u.matrix, who);
  const double scale = 1.0 + operator_norm(a.matrix);
  if (operator_norm(u.base.matrix - a.matrix) > a.tol * scale) {
    std::ostringstream msg;
    msg << who << ": tangent vector is based at a different point";
    throw ValidationError(msg.str());
  }
}

Projection atom_from_vector(const Vector& alpha, double tol) {
  ComplexMatrix m = alpha * alpha.adjoint();
  m = 0.5 * (m + m.adjoint().eval());
  return Projection{std::move(m), 1, tol, 0.0, 0.0};
}

}  // namespace

Projection make_projection(const ComplexMatrix& matrix, double tol) {
  require_square(matrix, "make_projection");
  if (!matrix.allFinite()) {
    throw ValidationError("make_projection: non-finite entries");
  }
  const double herm_residual = operator_norm(matrix - matrix.adjoint());
  if (herm_residual > tol) {
    std::ostringstream msg;
    msg << "make_projection: Hermitian residual " << herm_residual
        << " exceeds tolerance " << tol;
    throw ValidationError(msg.str());
  }
  ComplexMatrix m = 0.5 * (matrix + matrix.adjoint().eval());
  const double scale = 1.0 + operator_norm(m);
  const double idem_residual = operator_norm(m * m - m);
  if (idem_residual > tol * scale) {
    std::ostringstream msg;
    msg << "make_projection: idempotency residual " << idem_residual
        << " exceeds tolerance " << tol * scale;
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  int rank = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (std::min(std::abs(lambda), std::abs(lambda - 1.0)) > 2.0 * tol * scale) {
      std::ostringstream msg;
      msg << "make_projection: eigenvalue " << lambda
          << " is not clustered at {0,1}";
      throw ValidationError(msg.str());
    }
    if (lambda > 0.5) ++rank;
  }
  return Projection{std::move(m), rank, tol, herm_residual, idem_residual};
}

Projection random_projection(int n, int r, unsigned long long seed,
                             double tol) {
  if (n < 1 || r < 1 || r > n) {
    std::ostringstream msg;
    msg << "random_projection: rank " << r << " out of range 1.." << n;
    throw ValidationError(msg.str());
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, r);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) {
      const double re = gauss(gen);
      const double im = gauss(gen);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix v =
      qr.householderQ() * ComplexMatrix::Identity(n, r);
  ComplexMatrix p = v * v.adjoint();
  p = 0.5 * (p + p.adjoint().eval());
  return make_projection(p, tol);
}

Frame frame_for(const Projection& a) {
  const ComplexMatrix basis = range_basis(a);
  Frame frame;
  frame.base = a;
  frame.atoms.reserve(a.rank);
  frame.vectors.reserve(a.rank);
  for (int k = 0; k < a.rank; ++k) {
    frame.vectors.push_back(basis.col(k));
    frame.atoms.push_back(atom_from_vector(basis.col(k), a.tol));
  }
  return frame;
}

TangentVector tangent_project(const Projection& a, const ComplexMatrix& z) {
  require_same_dim(a.matrix, z, "tangent_project");
  const ComplexMatrix h = 0.5 * (z + z.adjoint().eval());
  ComplexMatrix u =
      triple::peirce_project(a.as_tripotent(), triple::PeirceIndex::kHalf, h);
  u = 0.5 * (u + u.adjoint().eval());
  return TangentVector{a, std::move(u)};
}

TangentVector checked_tangent(const Projection& a, ComplexMatrix matrix,
                              double tol) {
  require_same_dim(a.matrix, matrix, "checked_tangent");
  if (!matrix.allFinite()) {
    throw ValidationError("checked_tangent: non-finite entries");
  }
  const double herm = operator_norm(matrix - matrix.adjoint());
  if (herm > tol) {
    std::ostringstream msg;
    msg << "checked_tangent: Hermitian residual " << herm
        << " exceeds tolerance " << tol;
    throw ValidationError(msg.str());
  }
  ComplexMatrix m = 0.5 * (matrix + matrix.adjoint().eval());
  const ComplexMatrix half = 2.0 * triple::box_apply(a.matrix, a.matrix, m);
  const double membership = operator_norm(half - m);
  if (membership > tol * (1.0 + operator_norm(m))) {
    std::ostringstream msg;
    msg << "checked_tangent: membership residual " << membership
        << " exceeds tolerance; not a tangent vector at this point";
    throw ValidationError(msg.str());
  }
  return TangentVector{a, std::move(m)};
}

TangentVector tangent_from_xi(const Frame& frame,
                              const std::vector<Vector>& xis) {
  const Projection& a = frame.base;
  if (static_cast<int>(xis.size()) != frame.size()) {
    std::ostringstream msg;
    msg << "tangent_from_xi: got " << xis.size() << " vectors for a frame of "
        << frame.size() << " atoms";
    throw ValidationError(msg.str());
  }
  const int n = a.dim();
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < frame.size(); ++k) {
    const Vector& xi = xis[k];
    if (xi.size() != n) {
      throw ValidationError("tangent_from_xi: vector dimension mismatch");
    }
    if ((a.matrix * xi).norm() > a.tol * (1.0 + xi.norm())) {
      std::ostringstream msg;
      msg << "tangent_from_xi: xi_" << k
          << " is not orthogonal to the range of the base point";
      throw ValidationError(msg.str());
    }
    u += frame.vectors[k] * xi.adjoint() + xi * frame.vectors[k].adjoint();
  }
  return TangentVector{a, std::move(u)};
}

std::vector<Vector> xi_from_tangent(const Frame& frame,
                                    const TangentVector& u) {
  require_based_at(frame.base, u, "xi_from_tangent");
  std::vector<Vector> xis;
  xis.reserve(frame.size());
  for (int k = 0; k < frame.size(); ++k) {
    xis.push_back(u.matrix * frame.vectors[k]);
  }
  return xis;
}

SpectralData spectral_decompose(const TangentVector& u) {
  const Projection& a = u.base;
  checked_tangent(a, u.matrix, a.tol);
  const int n = a.dim();
  const ComplexMatrix q = ComplexMatrix::Identity(n, n) - a.matrix;
  const ComplexMatrix corner = q * u.matrix * a.matrix;
  Eigen::JacobiSVD<ComplexMatrix> svd(
      corner, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double norm = sigma.size() > 0 ? sigma(0) : 0.0;
  const double floor = a.tol * std::max(norm, 1.0);

  SpectralData data;
  data.base = a;
  for (Eigen::Index k = sigma.size() - 1; k >= 0; --k) {
    if (sigma(k) < floor) continue;
    const Vector alpha = svd.matrixV().col(k);
    const Vector xi = svd.matrixU().col(k);
    data.singular_values.push_back(sigma(k));
    data.alphas.push_back(alpha);
    data.xis.push_back(xi);
    data.tripotents.push_back(alpha * xi.adjoint() + xi * alpha.adjoint());
  }
  return data;
}

Frame associated_frame(const TangentVector& u) {
  return associated_frame(spectral_decompose(u));
}

Frame associated_frame(const SpectralData& data) {
  const Projection& a = data.base;
  const int r = a.rank;
  const int s = data.count();

  Frame frame;
  frame.base = a;
  frame.atoms.reserve(r);
  frame.vectors.reserve(r);
  for (int k = 0; k < s; ++k) {
    frame.vectors.push_back(data.alphas[k]);
    frame.atoms.push_back(atom_from_vector(data.alphas[k], a.tol));
  }
  if (s < r) {
    // Orthonormal completion: the unexplored part of range(a) is the range
    // of a minus the atoms found so far, itself a projection of rank r - s.
    ComplexMatrix rest = a.matrix;
    for (int k = 0; k < s; ++k) {
      rest -= frame.atoms[k].matrix;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rest);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      if (es.eigenvalues()(k) <= 0.5) continue;
      const Vector alpha = es.eigenvectors().col(k);
      frame.vectors.push_back(alpha);
      frame.atoms.push_back(atom_from_vector(alpha, a.tol));
    }
  }
  if (frame.size() != r) {
    throw ValidationError(
        "associated_frame: completion did not recover the full rank");
  }
  return frame;
}

ComplexMatrix minimal_tripotent_half(const Vector& alpha, const Vector& xi,
                                     double tol) {
  if (alpha.size() != xi.size()) {
    throw ValidationError("minimal_tripotent_half: dimension mismatch");
  }
  if (std::abs(alpha.norm() - 1.0) > tol || std::abs(xi.norm() - 1.0) > tol) {
    throw ValidationError("minimal_tripotent_half: inputs must be unit "
                          "vectors");
  }
  if (std::abs(alpha.dot(xi)) > tol) {
    throw ValidationError("minimal_tripotent_half: inputs must be "
                          "orthogonal");
  }
  return alpha * xi.adjoint() + xi * alpha.adjoint();
}

bool are_orthogonal_tripotents(const ComplexMatrix& x, const ComplexMatrix& y,
                               double tol) {
  require_square(x, "are_orthogonal_tripotents");
  require_same_dim(x, y, "are_orthogonal_tripotents");
  return operator_norm(x * y.adjoint()) <= tol &&
         operator_norm(y.adjoint() * x) <= tol;
}

std::vector<double> lambda_coefficients(const Frame& frame,
                                        const Projection& b) {
  require_same_dim(frame.base.matrix, b.matrix, "lambda_coefficients");
  std::vector<double> lambdas;
  lambdas.reserve(frame.size());
  for (int k = 0; k < frame.size(); ++k) {
    const Vector& alpha = frame.vectors[k];
    const double value = alpha.dot(b.matrix * alpha).real();
    lambdas.push_back(std::clamp(value, 0.0, 1.0));
  }
  return lambdas;
}

bool is_in_normal_nbhd(const Projection& a, const Projection& b, double eps) {
  require_same_dim(a.matrix, b.matrix, "is_in_normal_nbhd");
  if (a.rank != b.rank) {
    std::ostringstream msg;
    msg << "is_in_normal_nbhd: rank mismatch, " << a.rank << " vs " << b.rank;
    throw ValidationError(msg.str());
  }
  if (a.rank == 0) return true;
  const ComplexMatrix basis = range_basis(a);
  const ComplexMatrix compression = basis.adjoint() * b.matrix * basis;
  Eigen::JacobiSVD<ComplexMatrix> svd(compression);
  return svd.singularValues()(svd.singularValues().size() - 1) >= eps;
}

double metric(const Projection& a, const TangentVector& u,
              const TangentVector& v) {
  require_based_at(a, u, "metric");
  require_based_at(a, v, "metric");
  if (a.rank < 1) {
    throw ValidationError("metric: base point must have positive rank");
  }
  return metric_over_frame(associated_frame(u), u, v);
}

double metric_over_frame(const Frame& frame, const TangentVector& u,
                         const TangentVector& v) {
  require_based_at(frame.base, u, "metric_over_frame");
  require_based_at(frame.base, v, "metric_over_frame");
  if (frame.size() < 1) {
    throw ValidationError("metric_over_frame: empty frame");
  }
  Complex total = 0.0;
  for (int k = 0; k < frame.size(); ++k) {
    const Tripotent atom = frame.atoms[k].as_tripotent();
    const ComplexMatrix uk =
        triple::peirce_project(atom, triple::PeirceIndex::kHalf, u.matrix);
    const ComplexMatrix vk =
        triple::peirce_project(atom, triple::PeirceIndex::kHalf, v.matrix);
    total += triple::levi_form(atom, vk, uk);
  }
  return total.real() / static_cast<double>(frame.size());
}

std::vector<ComplexMatrix> jordan_algebra_basis(const Projection& a_k,
                                                const ComplexMatrix& u_k) {
  require_same_dim(a_k.matrix, u_k, "jordan_algebra_basis");
  if (a_k.rank != 1) {
    throw DomainError("jordan_algebra_basis: base atom must have rank 1");
  }
  const double tol = a_k.tol;
  if (operator_norm(u_k - u_k.adjoint()) > tol) {
    throw DomainError("jordan_algebra_basis: tripotent must be Hermitian");
  }
  if (!triple::is_tripotent(u_k, tol)) {
    throw DomainError("jordan_algebra_basis: second argument is not a "
                      "tripotent");
  }
  const Tripotent atom = a_k.as_tripotent();
  const ComplexMatrix inside =
      triple::peirce_project(atom, triple::PeirceIndex::kHalf, u_k);
  if (operator_norm(inside - u_k) > tol * (1.0 + operator_norm(u_k))) {
    throw DomainError("jordan_algebra_basis: tripotent is not in the "
                      "half-eigenspace of the atom");
  }
  const ComplexMatrix u_sq = triple::jordan_product(atom, u_k, u_k);
  return {a_k.matrix, u_k, u_sq};
}

}  // namespace jbt::manifold
