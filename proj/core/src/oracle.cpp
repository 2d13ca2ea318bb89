#include "jbt/oracle.hpp"

#include "jbt/triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jbt::oracle {

namespace {

ComplexMatrix own_range_basis(const Projection& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix);
  const int n = a.dim();
  ComplexMatrix basis(n, a.rank);
  int out = 0;
  for (int k = 0; k < n && out < a.rank; ++k) {
    if (es.eigenvalues()(k) > 0.5) basis.col(out++) = es.eigenvectors().col(k);
  }
  if (out != a.rank) {
    throw ValidationError("principal_angles: eigenvalue count does not "
                          "match the recorded rank");
  }
  return basis;
}

void require_tangent(const Projection& a, const TangentVector& u,
                     const char* who) {
  require_same_dim(a.matrix, u.matrix, who);
  const double tol = a.tol;
  const double scale = 1.0 + operator_norm(u.matrix);
  if (operator_norm(u.base.matrix - a.matrix) > tol * 2.0) {
    std::ostringstream msg;
    msg << who << ": tangent vector is based at a different point";
    throw ValidationError(msg.str());
  }
  if (operator_norm(u.matrix - u.matrix.adjoint()) > tol * scale) {
    std::ostringstream msg;
    msg << who << ": tangent vector is not Hermitian";
    throw ValidationError(msg.str());
  }
  const int n = a.dim();
  const ComplexMatrix q = ComplexMatrix::Identity(n, n) - a.matrix;
  if (operator_norm(a.matrix * u.matrix * a.matrix) > tol * scale ||
      operator_norm(q * u.matrix * q) > tol * scale) {
    std::ostringstream msg;
    msg << who << ": matrix has diagonal blocks, not a tangent vector";
    throw ValidationError(msg.str());
  }
}

}  // namespace

std::vector<double> principal_angles(const Projection& a,
                                     const Projection& b) {
  require_same_dim(a.matrix, b.matrix, "principal_angles");
  if (a.rank != b.rank) {
    std::ostringstream msg;
    msg << "principal_angles: rank mismatch, " << a.rank << " vs " << b.rank;
    throw ValidationError(msg.str());
  }
  if (a.rank == 0) return {};
  const ComplexMatrix basis_a = own_range_basis(a);
  const ComplexMatrix basis_b = own_range_basis(b);
  const ComplexMatrix overlap = basis_a.adjoint() * basis_b;
  Eigen::JacobiSVD<ComplexMatrix> cos_svd(overlap);
  // The singular values of Q_a* Q_b are the cosines and those of
  // Q_b - Q_a (Q_a* Q_b) the sines.  arccos alone would amplify rounding
  // error near 1 to sqrt(eps); atan2 of the sine/cosine pair
  // (Bjorck-Golub) is well conditioned over the whole quadrant.  Cosines
  // descend and sines ascend with the angle, so sorting both lists pairs
  // them term by term.
  Eigen::JacobiSVD<ComplexMatrix> sin_svd(basis_b - basis_a * overlap);
  std::vector<double> sines(sin_svd.singularValues().data(),
                            sin_svd.singularValues().data() + a.rank);
  std::sort(sines.begin(), sines.end());
  std::vector<double> angles;
  angles.reserve(a.rank);
  for (Eigen::Index k = 0; k < cos_svd.singularValues().size(); ++k) {
    angles.push_back(std::atan2(sines[static_cast<std::size_t>(k)],
                                cos_svd.singularValues()(k)));
  }
  return angles;
}

Projection commutator_flow(const Projection& a, const TangentVector& u,
                           double t) {
  require_tangent(a, u, "commutator_flow");
  const ComplexMatrix omega = u.matrix * a.matrix - a.matrix * u.matrix;
  // Omega is skew-Hermitian, so -i Omega is Hermitian and the exponential
  // follows exactly from its eigendecomposition.
  const Complex i_unit(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(-i_unit * omega);
  const int n = a.dim();
  Vector phases(n);
  for (int k = 0; k < n; ++k) {
    phases(k) = std::exp(i_unit * (t * es.eigenvalues()(k)));
  }
  const ComplexMatrix flow =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  ComplexMatrix moved = flow * a.matrix * flow.adjoint();
  const double herm = operator_norm(moved - moved.adjoint());
  moved = 0.5 * (moved + moved.adjoint().eval());
  const double idem = operator_norm(moved * moved - moved);
  return Projection{std::move(moved), a.rank, a.tol, herm, idem};
}

ComplexMatrix operator_flow_series(const Projection& a,
                                   const TangentVector& u, double t,
                                   int terms) {
  if (terms < 1) {
    throw ValidationError("operator_flow_series: need at least one term");
  }
  require_same_dim(a.matrix, u.matrix, "operator_flow_series");
  ComplexMatrix acc = a.matrix;
  ComplexMatrix power = a.matrix;  // k_u^m(a) at the current order
  double coefficient = 1.0;        // t^m / m!
  for (int m = 1; m < terms; ++m) {
    power = triple::k_operator_apply(a.matrix, u.matrix, power);
    coefficient *= t / static_cast<double>(m);
    acc += coefficient * power;
  }
  return acc;
}

}  // namespace jbt::oracle
