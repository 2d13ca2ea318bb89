#include "jbt/geodesy.hpp"

#include "jbt/manifold.hpp"
#include "jbt/triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace jbt::geodesy {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// Lexicographic order on (rows, cols, entries); 0 for bitwise-equal
// matrices. Used to evaluate symmetric formulas in a canonical argument
// order so they are exactly symmetric in floating point.
int compare_matrices(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex x = a(i, j);
      const Complex y = b(i, j);
      if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
      if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
    }
  }
  return 0;
}

void require_same_rank(const Projection& a, const Projection& b,
                       const char* who) {
  require_same_dim(a.matrix, b.matrix, who);
  if (a.rank != b.rank) {
    std::ostringstream msg;
    msg << who << ": rank mismatch, " << a.rank << " vs " << b.rank;
    throw ValidationError(msg.str());
  }
}

}  // namespace

GeodesicSpec geodesic_spec(const Projection& a, const TangentVector& u) {
  require_same_dim(a.matrix, u.matrix, "geodesic_spec");
  if (operator_norm(u.base.matrix - a.matrix) >
      a.tol * (1.0 + operator_norm(a.matrix))) {
    throw ValidationError(
        "geodesic_spec: tangent vector is based at a different point");
  }
  const SpectralData data = manifold::spectral_decompose(u);
  const Frame frame = manifold::associated_frame(data);
  GeodesicSpec spec;
  spec.base = a;
  const int s = data.count();
  for (int k = 0; k < s; ++k) {
    spec.components.push_back(GeodesicComponent{
        frame.atoms[k], data.tripotents[k], data.singular_values[k]});
  }
  for (int k = s; k < frame.size(); ++k) {
    spec.stationary_atoms.push_back(frame.atoms[k]);
  }
  return spec;
}

GeodesicSpec geodesic_spec(const ConnectData& data) {
  GeodesicSpec spec;
  spec.base = data.source;
  const int s = static_cast<int>(data.tripotents.size());
  for (int k = 0; k < s; ++k) {
    spec.components.push_back(GeodesicComponent{
        data.frame.atoms[k], data.tripotents[k], data.angles[k]});
  }
  for (int k = s; k < data.frame.size(); ++k) {
    spec.stationary_atoms.push_back(data.frame.atoms[k]);
  }
  return spec;
}

Projection geodesic_eval(const GeodesicSpec& spec, double t) {
  const int n = spec.base.dim();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const GeodesicComponent& comp : spec.components) {
    const double c = std::cos(comp.angle * t);
    const double s = std::sin(comp.angle * t);
    const Tripotent atom = comp.atom.as_tripotent();
    const ComplexMatrix squared =
        triple::jordan_product(atom, comp.tripotent, comp.tripotent);
    m += (c * c) * comp.atom.matrix + (s * c) * comp.tripotent +
         (s * s) * squared;
  }
  for (const Projection& atom : spec.stationary_atoms) {
    m += atom.matrix;
  }
  return manifold::make_projection(m, spec.base.tol);
}

Projection geodesic_point(const Projection& a, const TangentVector& u,
                          double t) {
  return geodesic_eval(geodesic_spec(a, u), t);
}

Projection exp_map(const Projection& a, const TangentVector& u) {
  const GeodesicSpec spec = geodesic_spec(a, u);
  double rate = 0.0;
  for (const GeodesicComponent& comp : spec.components) {
    rate = std::max(rate, comp.angle);
  }
  if (rate >= kHalfPi) {
    std::ostringstream msg;
    msg << "exp_map: velocity has largest singular value " << rate
        << " >= pi/2, outside the injectivity domain";
    throw DomainError(msg.str());
  }
  return geodesic_eval(spec, 1.0);
}

ConnectData connect(const Projection& a, const Projection& b) {
  require_same_rank(a, b, "connect");
  const double eps = 1e-10;
  const int n = a.dim();
  const int r = a.rank;

  const ComplexMatrix basis = manifold::range_basis(a);
  const ComplexMatrix compression = basis.adjoint() * b.matrix * basis;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(compression);

  int degenerate = 0;
  for (int k = 0; k < r; ++k) {
    if (es.eigenvalues()(k) < eps) ++degenerate;
  }
  if (degenerate > 0) {
    std::ostringstream msg;
    msg << "connect: target is not in normal neighbourhood of source: "
        << degenerate << " direction(s) of range(a) are antipodal or "
        << "degenerate (smallest compression eigenvalue "
        << es.eigenvalues()(0) << " < " << eps
        << "); the joining geodesic is not unique";
    throw DomainError(msg.str());
  }

  ConnectData data;
  data.source = a;
  data.target = b;
  data.frame.base = a;

  const ComplexMatrix q = ComplexMatrix::Identity(n, n) - a.matrix;
  std::vector<Vector> stationary;
  // Ascending eigenvalues = descending angles; walk backwards so active
  // components come out angle-ascending.
  for (int k = r - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()(k);
    const Vector alpha = basis * es.eigenvectors().col(k);
    const Vector raw = q * (b.matrix * alpha);
    const double rho = raw.norm();
    if (rho < a.tol) {
      stationary.push_back(alpha);
      continue;
    }
    const Vector xi = raw / rho;
    data.frame.vectors.push_back(alpha);
    data.frame.atoms.push_back(
        manifold::make_projection(alpha * alpha.adjoint(), a.tol));
    data.tripotents.push_back(alpha * xi.adjoint() + xi * alpha.adjoint());
    data.angles.push_back(std::atan2(rho, lambda));
  }
  for (const Vector& alpha : stationary) {
    data.frame.vectors.push_back(alpha);
    data.frame.atoms.push_back(
        manifold::make_projection(alpha * alpha.adjoint(), a.tol));
  }
  return data;
}

TangentVector log_map(const Projection& a, const Projection& b) {
  const ConnectData data = connect(a, b);
  const int n = a.dim();
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < data.tripotents.size(); ++k) {
    u += data.angles[k] * data.tripotents[k];
  }
  return TangentVector{a, std::move(u)};
}

double distance(const Projection& a, const Projection& b) {
  require_same_rank(a, b, "distance");
  if (a.rank == 0) return 0.0;
  const int cmp = compare_matrices(a.matrix, b.matrix);
  if (cmp == 0) return 0.0;
  const Projection& first = cmp < 0 ? a : b;
  const Projection& second = cmp < 0 ? b : a;

  // The singular values of b V are the cosines of the principal angles and
  // those of (I - b) V the sines.  arccos alone would turn rounding error
  // near 1 into a sqrt(eps) absolute error in the angle; atan2 of the
  // sine/cosine pair (Bjorck-Golub) is well conditioned over the whole
  // quadrant.  Cosines descend and sines ascend with the angle, so sorting
  // pairs the two lists term by term.
  const ComplexMatrix basis = manifold::range_basis(first);
  const ComplexMatrix cos_side = second.matrix * basis;
  Eigen::JacobiSVD<ComplexMatrix> cos_svd(cos_side);
  Eigen::JacobiSVD<ComplexMatrix> sin_svd(basis - cos_side);
  std::vector<double> sines(sin_svd.singularValues().data(),
                            sin_svd.singularValues().data() + a.rank);
  std::sort(sines.begin(), sines.end());
  double sum = 0.0;
  for (int k = 0; k < a.rank; ++k) {
    const double theta = std::atan2(sines[static_cast<std::size_t>(k)],
                                    cos_svd.singularValues()(k));
    sum += theta * theta;
  }
  return std::sqrt(sum / static_cast<double>(a.rank));
}

Projection midpoint(const Projection& a, const Projection& b) {
  return geodesic_eval(geodesic_spec(connect(a, b)), 0.5);
}

ComplexMatrix peirce_symmetry(const Projection& a, const ComplexMatrix& z) {
  const auto [z1, z_half, z0] = triple::peirce_decompose(a.as_tripotent(), z);
  return z1 - z_half + z0;
}

ComplexMatrix transport_automorphism(const Projection& a,
                                     const Projection& b) {
  require_same_rank(a, b, "transport_automorphism");
  // Both eigenbases list the kernel first and the range last (ascending
  // eigenvalues), so the basis exchange pairs kernel with kernel and range
  // with range.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_a(a.matrix);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_b(b.matrix);
  return es_b.eigenvectors() * es_a.eigenvectors().adjoint();
}

TangentVector covariant_acceleration(
    const std::function<Projection(double)>& curve, double t, double h) {
  if (!(h > 0.0)) {
    throw ValidationError("covariant_acceleration: step must be positive");
  }
  const Projection at = curve(t);
  const auto second_difference = [&](double step) -> ComplexMatrix {
    const Projection plus = curve(t + step);
    const Projection minus = curve(t - step);
    return (plus.matrix - 2.0 * at.matrix + minus.matrix) / (step * step);
  };
  const ComplexMatrix coarse = second_difference(h);
  const ComplexMatrix fine = second_difference(0.5 * h);
  const ComplexMatrix refined = (4.0 * fine - coarse) / 3.0;
  return manifold::tangent_project(at, refined);
}

}  // namespace jbt::geodesy
