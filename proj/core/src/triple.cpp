#include "jbt/triple.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <sstream>
#include <utility>

namespace jbt::triple {

ComplexMatrix triple_product(const ComplexMatrix& x, const ComplexMatrix& y,
                             const ComplexMatrix& z) {
  require_same_dim(x, y, "triple_product");
  require_same_dim(x, z, "triple_product");
  const ComplexMatrix ys = y.adjoint();
  return 0.5 * (x * ys * z + z * ys * x);
}

ComplexMatrix box_apply(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ComplexMatrix& z) {
  return triple_product(a, b, z);
}

ComplexMatrix q_apply(const ComplexMatrix& e, const ComplexMatrix& z) {
  return triple_product(e, z, e);
}

bool is_tripotent(const ComplexMatrix& e, double tol) {
  if (e.rows() != e.cols()) return false;
  const ComplexMatrix eee = e * e.adjoint() * e;
  return operator_norm(eee - e) <= tol * (1.0 + operator_norm(e));
}

ComplexMatrix peirce_project(const Tripotent& e, PeirceIndex k,
                             const ComplexMatrix& z) {
  const ComplexMatrix& em = e.matrix;
  require_same_dim(em, z, "peirce_project");
  switch (k) {
    case PeirceIndex::kOne:
      return q_apply(em, q_apply(em, z));
    case PeirceIndex::kHalf:
      return 2.0 * (box_apply(em, em, z) - q_apply(em, q_apply(em, z)));
    case PeirceIndex::kZero:
      return z - 2.0 * box_apply(em, em, z) + q_apply(em, q_apply(em, z));
  }
  throw ValidationError("peirce_project: invalid Peirce index");
}

std::tuple<ComplexMatrix, ComplexMatrix, ComplexMatrix> peirce_decompose(
    const Tripotent& e, const ComplexMatrix& z) {
  return {peirce_project(e, PeirceIndex::kOne, z),
          peirce_project(e, PeirceIndex::kHalf, z),
          peirce_project(e, PeirceIndex::kZero, z)};
}

namespace {

// e and f are orthogonal tripotents iff e [] f = 0, which for matrices
// amounts to e f* = 0 and f* e = 0.
bool orthogonal_pair(const ComplexMatrix& e, const ComplexMatrix& f,
                     double tol) {
  const double scale =
      1.0 + operator_norm(e) * operator_norm(f);
  return operator_norm(e * f.adjoint()) <= tol * scale &&
         operator_norm(f.adjoint() * e) <= tol * scale;
}

void require_orthogonal_family(const std::vector<Tripotent>& frame,
                               const char* who) {
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      const double tol = std::max(frame[i].tol, frame[j].tol);
      if (!orthogonal_pair(frame[i].matrix, frame[j].matrix, tol)) {
        std::ostringstream msg;
        msg << who << ": tripotents " << i << " and " << j
            << " are not orthogonal";
        throw ValidationError(msg.str());
      }
    }
  }
}

}  // namespace

ComplexMatrix joint_peirce_project(const std::vector<Tripotent>& frame, int i,
                                   int j, const ComplexMatrix& z) {
  const int r = static_cast<int>(frame.size());
  if (r == 0) throw ValidationError("joint_peirce_project: empty frame");
  if (i < 0 || i > r || j < 0 || j > r) {
    std::ostringstream msg;
    msg << "joint_peirce_project: index (" << i << "," << j
        << ") out of range 0.." << r;
    throw ValidationError(msg.str());
  }
  for (const Tripotent& e : frame) {
    require_same_dim(e.matrix, z, "joint_peirce_project");
  }
  require_orthogonal_family(frame, "joint_peirce_project");
  if (i > j) std::swap(i, j);

  // The box operators of an orthogonal family commute, so their Peirce
  // projections do too; the joint component is reached by composing them:
  //   Z_kk = ran P_1(e_k),   Z_kl = ran P_1/2(e_k) P_1/2(e_l),
  //   Z_0l = ran P_1/2(e_l) prod_{k != l} P_0(e_k),
  //   Z_00 = ran prod_k P_0(e_k).
  ComplexMatrix out = z;
  if (i == 0 && j == 0) {
    for (const Tripotent& e : frame) {
      out = peirce_project(e, PeirceIndex::kZero, out);
    }
  } else if (i == 0) {
    out = peirce_project(frame[j - 1], PeirceIndex::kHalf, out);
    for (int k = 1; k <= r; ++k) {
      if (k == j) continue;
      out = peirce_project(frame[k - 1], PeirceIndex::kZero, out);
    }
  } else if (i == j) {
    out = peirce_project(frame[i - 1], PeirceIndex::kOne, out);
  } else {
    out = peirce_project(frame[i - 1], PeirceIndex::kHalf, out);
    out = peirce_project(frame[j - 1], PeirceIndex::kHalf, out);
  }
  return out;
}

ComplexMatrix jordan_product(const Tripotent& e, const ComplexMatrix& x,
                             const ComplexMatrix& y) {
  return triple_product(x, e.matrix, y);
}

ComplexMatrix sharp(const Tripotent& e, const ComplexMatrix& x) {
  require_same_dim(e.matrix, x, "sharp");
  const ComplexMatrix inside = peirce_project(e, PeirceIndex::kOne, x);
  if (operator_norm(inside - x) > e.tol * (1.0 + operator_norm(x))) {
    throw DomainError("sharp: argument is not in the 1-eigenspace of e");
  }
  return q_apply(e.matrix, x);
}

Complex levi_form(const Tripotent& e, const ComplexMatrix& u,
                  const ComplexMatrix& v) {
  const ComplexMatrix& em = e.matrix;
  require_same_dim(em, u, "levi_form");
  require_same_dim(em, v, "levi_form");
  const double tol = e.tol;

  // Minimality: rank-1 partial isometry (singular values above 1/2).
  Eigen::JacobiSVD<ComplexMatrix> svd(em, Eigen::ComputeThinU);
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > 0.5) ++rank;
  }
  if (rank != 1) {
    std::ostringstream msg;
    msg << "levi_form: tripotent has rank " << rank << ", expected 1";
    throw DomainError(msg.str());
  }

  const double scale_u = 1.0 + operator_norm(u);
  const double scale_v = 1.0 + operator_norm(v);
  if (operator_norm(peirce_project(e, PeirceIndex::kHalf, u) - u) >
      tol * scale_u) {
    throw DomainError("levi_form: u is not in the half-eigenspace of e");
  }
  if (operator_norm(peirce_project(e, PeirceIndex::kHalf, v) - v) >
      tol * scale_v) {
    throw DomainError("levi_form: v is not in the half-eigenspace of e");
  }

  const ComplexMatrix euv = triple_product(em, u, v);
  const Vector alpha = svd.matrixU().col(0);
  const Complex c = alpha.dot(euv * alpha);
  if (operator_norm(euv - c * em) > tol * (1.0 + scale_u * scale_v)) {
    throw DomainError("levi_form: {euv} is not a multiple of e");
  }
  return c;
}

ComplexMatrix k_operator_apply(const ComplexMatrix& e, const ComplexMatrix& u,
                               const ComplexMatrix& z) {
  return 2.0 * (box_apply(u, e, z) - box_apply(e, u, z));
}

}  // namespace jbt::triple
