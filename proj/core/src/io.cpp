#include "jbt/io.hpp"

#include "jbt/manifold.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <utility>

namespace jbt::io {

namespace {

using nlohmann::json;

json entries_of(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return entries;
}

json matrix_object(const ComplexMatrix& m) {
  return json{{"schema_version", "1"},
              {"kind", "matrix"},
              {"n", m.rows()},
              {"entries", entries_of(m)}};
}

json projection_object(const Projection& p) {
  return json{{"schema_version", "1"},
              {"kind", "projection"},
              {"n", p.dim()},
              {"rank", p.rank},
              {"entries", entries_of(p.matrix)}};
}

json tangent_object(const TangentVector& u) {
  return json{{"schema_version", "1"},
              {"kind", "tangent"},
              {"n", u.dim()},
              {"base", projection_object(u.base)},
              {"entries", entries_of(u.matrix)}};
}

void dump_to(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot open for writing: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw ValidationError("write failed: " + path);
  }
}

double number_of(const json& j, const char* where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    double value = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw ValidationError(std::string(where) + ": unparseable number \"" +
                            s + "\"");
    }
    return value;
  }
  throw ValidationError(std::string(where) +
                        ": expected a number or a decimal string");
}

int integer_of(const json& j, const char* where) {
  if (!j.is_number_integer()) {
    throw ValidationError(std::string(where) + ": expected an integer");
  }
  return j.get<int>();
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(std::string("missing field \"") + name + "\"");
  }
  return *it;
}

void check_version(const json& j, bool required) {
  const auto it = j.find("schema_version");
  if (it == j.end()) {
    if (required) throw ValidationError("missing field \"schema_version\"");
    return;
  }
  if (!it->is_string() || it->get<std::string>() != "1") {
    throw ValidationError("unsupported schema_version (expected \"1\")");
  }
}

ComplexMatrix decode_entries(const json& j, int n) {
  const json& entries = field(j, "entries");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(n) * n) {
    throw ValidationError("entries must hold n*n [re, im] pairs");
  }
  ComplexMatrix m(n, n);
  std::size_t index = 0;
  for (int i = 0; i < n; ++i) {
    for (int j2 = 0; j2 < n; ++j2, ++index) {
      const json& pair = entries[index];
      if (!pair.is_array() || pair.size() != 2) {
        throw ValidationError("each entry must be a [re, im] pair");
      }
      m(i, j2) = Complex(number_of(pair[0], "entry"),
                         number_of(pair[1], "entry"));
    }
  }
  return m;
}

Projection decode_projection(const json& j, double tol, bool top_level);

AnyValue decode_any(const json& j, double tol) {
  if (!j.is_object()) {
    throw ValidationError("matrix file must be a single object");
  }
  check_version(j, /*required=*/true);
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw ValidationError("kind must be a string");
  const std::string kind_name = kind.get<std::string>();
  const int n = integer_of(field(j, "n"), "n");
  if (n < 1) throw ValidationError("n must be positive");

  AnyValue value;
  value.matrix = decode_entries(j, n);
  if (kind_name == "matrix") {
    value.kind = Kind::kMatrix;
  } else if (kind_name == "projection") {
    value.kind = Kind::kProjection;
    value.projection = decode_projection(j, tol, /*top_level=*/true);
    value.matrix = value.projection->matrix;
  } else if (kind_name == "tangent") {
    value.kind = Kind::kTangent;
    const Projection base =
        decode_projection(field(j, "base"), tol, /*top_level=*/false);
    value.tangent = manifold::checked_tangent(base, value.matrix, tol);
    value.matrix = value.tangent->matrix;
  } else {
    throw ValidationError("unknown kind \"" + kind_name + "\"");
  }
  return value;
}

// A projection object, either a whole file or embedded as a tangent base.
// Embedded objects may omit schema_version; a plain "matrix" kind is
// accepted if its entries validate.
Projection decode_projection(const json& j, double tol, bool top_level) {
  if (!j.is_object()) {
    throw ValidationError("projection must be an object");
  }
  check_version(j, /*required=*/top_level);
  std::string kind_name = "projection";
  if (const auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("kind must be a string");
    kind_name = it->get<std::string>();
  }
  if (kind_name == "tangent") {
    throw ValidationError("expected a projection, found kind \"tangent\"");
  }
  const int n = integer_of(field(j, "n"), "n");
  if (n < 1) throw ValidationError("n must be positive");
  const Projection p = manifold::make_projection(decode_entries(j, n), tol);
  if (kind_name == "projection") {
    const int declared = integer_of(field(j, "rank"), "rank");
    if (declared != p.rank) {
      throw ValidationError("declared rank " + std::to_string(declared) +
                            " but entries have rank " +
                            std::to_string(p.rank));
    }
  }
  return p;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace

AnyValue read_any(const std::string& path, double tol) {
  try {
    return decode_any(load_file(path), tol);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Projection read_projection(const std::string& path, double tol) {
  try {
    return decode_projection(load_file(path), tol, /*top_level=*/true);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

TangentVector read_tangent(const std::string& path, double tol) {
  AnyValue value = read_any(path, tol);
  if (value.kind != Kind::kTangent) {
    throw ValidationError(path + ": expected kind \"tangent\"");
  }
  return std::move(*value.tangent);
}

void write_matrix(const ComplexMatrix& m, const std::string& path) {
  require_square(m, "write_matrix");
  dump_to(matrix_object(m), path);
}

void write_projection(const Projection& p, const std::string& path) {
  dump_to(projection_object(p), path);
}

void write_tangent(const TangentVector& u, const std::string& path) {
  dump_to(tangent_object(u), path);
}

void write_path(const GeodesicPath& path, const std::string& file) {
  json samples = json::array();
  for (const PathSample& sample : path.samples) {
    samples.push_back(json{{"t", sample.t},
                           {"projection", projection_object(sample.projection)}});
  }
  json meta{{"source", projection_object(path.source)},
            {"angles", path.angles},
            {"distance", path.distance}};
  if (path.target) {
    meta["target"] = projection_object(*path.target);
  }
  dump_to(json{{"schema_version", "1"},
               {"samples", std::move(samples)},
               {"meta", std::move(meta)}},
          file);
}

GeodesicPath read_path(const std::string& file, double tol) {
  const json j = load_file(file);
  try {
    if (!j.is_object()) throw ValidationError("path file must be an object");
    check_version(j, /*required=*/true);
    const json& samples = field(j, "samples");
    if (!samples.is_array() || samples.empty()) {
      throw ValidationError("samples must be a non-empty array");
    }
    GeodesicPath path;
    double previous_t = 0.0;
    for (const json& sample : samples) {
      if (!sample.is_object()) {
        throw ValidationError("each sample must be an object");
      }
      PathSample decoded;
      decoded.t = number_of(field(sample, "t"), "t");
      decoded.projection = decode_projection(field(sample, "projection"), tol,
                                             /*top_level=*/false);
      if (!path.samples.empty() && decoded.t <= previous_t) {
        throw ValidationError("sample times must be strictly increasing");
      }
      previous_t = decoded.t;
      path.samples.push_back(std::move(decoded));
    }
    const json& meta = field(j, "meta");
    if (!meta.is_object()) throw ValidationError("meta must be an object");
    path.source =
        decode_projection(field(meta, "source"), tol, /*top_level=*/false);
    if (const auto it = meta.find("target"); it != meta.end()) {
      path.target = decode_projection(*it, tol, /*top_level=*/false);
    }
    const json& angles = field(meta, "angles");
    if (!angles.is_array()) throw ValidationError("angles must be an array");
    for (const json& angle : angles) {
      path.angles.push_back(number_of(angle, "angle"));
    }
    path.distance = number_of(field(meta, "distance"), "distance");
    return path;
  } catch (const json::exception& e) {
    throw ValidationError(file + ": " + e.what());
  }
}

}  // namespace jbt::io
