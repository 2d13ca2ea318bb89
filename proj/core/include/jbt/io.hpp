#pragma once

#include "jbt/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jbt::io {

enum class Kind { kMatrix, kProjection, kTangent };

/// One decoded matrix file, validated according to its declared kind.
struct AnyValue {
  Kind kind = Kind::kMatrix;
  ComplexMatrix matrix;
  std::optional<Projection> projection;   // set when kind == kProjection
  std::optional<TangentVector> tangent;   // set when kind == kTangent
};

/// Decode and validate a matrix file of any kind. Schema violations raise
/// ValidationError; projection/tangent payloads are re-validated.
AnyValue read_any(const std::string& path, double tol = kDefaultTol);

/// Accepts kind "projection" (declared rank cross-checked) or a plain
/// "matrix" that validates as a projection.
Projection read_projection(const std::string& path, double tol = kDefaultTol);

/// Requires kind "tangent" with an embedded base projection.
TangentVector read_tangent(const std::string& path, double tol = kDefaultTol);

void write_matrix(const ComplexMatrix& m, const std::string& path);
void write_projection(const Projection& p, const std::string& path);
void write_tangent(const TangentVector& u, const std::string& path);

struct PathSample {
  double t = 0.0;
  Projection projection;
};

/// A sampled geodesic: samples with strictly increasing t, the endpoints,
/// the rotation angles, and the Riemann distance covered on [0, 1].
struct GeodesicPath {
  std::vector<PathSample> samples;
  Projection source;
  std::optional<Projection> target;
  std::vector<double> angles;
  double distance = 0.0;
};

void write_path(const GeodesicPath& path, const std::string& file);
GeodesicPath read_path(const std::string& file, double tol = kDefaultTol);

}  // namespace jbt::io
