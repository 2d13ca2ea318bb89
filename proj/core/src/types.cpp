#include "jbt/types.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace jbt {

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermiticity_residual(const ComplexMatrix& m) {
  return operator_norm(m - m.adjoint());
}

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << who << ": expected a square matrix, got " << m.rows() << "x"
        << m.cols();
    throw ValidationError(msg.str());
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << who << ": dimension mismatch, " << a.rows() << "x" << a.cols()
        << " vs " << b.rows() << "x" << b.cols();
    throw ValidationError(msg.str());
  }
}

Tripotent Tripotent::checked(ComplexMatrix m, double tol) {
  require_square(m, "Tripotent::checked");
  const ComplexMatrix eee = m * m.adjoint() * m;
  const double residual = operator_norm(eee - m);
  if (residual > tol * (1.0 + operator_norm(m))) {
    std::ostringstream msg;
    msg << "Tripotent::checked: |{eee} - e| = " << residual
        << " exceeds tolerance " << tol;
    throw ValidationError(msg.str());
  }
  return Tripotent{std::move(m), tol};
}

}  // namespace jbt
