// End-to-end acceptance gate: one line per criterion, nonzero exit if any
// fails. Residual tolerances and time limits are printed next to each
// result so a regression is visible in the line itself.

#include "jbt/geodesy.hpp"
#include "jbt/io.hpp"
#include "jbt/manifold.hpp"
#include "jbt/oracle.hpp"
#include "jbt/suite.hpp"
#include "jbt/triple.hpp"
#include "jbt/types.hpp"
#include "test_support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace jbt {
namespace {

using testing::basis_matrix;
using testing::random_matrix;
using testing::random_point;
using testing::random_tangent;
using testing::random_tripotent;
using testing::random_unitary;
using testing::Rng;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// Tracks the worst residual seen and renders the pass/fail verdict
// against a fixed tolerance.
struct Worst {
  double value = 0.0;
  void note(double residual) { value = std::max(value, residual); }
  bool within(double tolerance) const { return value <= tolerance; }
};

int sample_dim(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---------------------------------------------------------------------
// 1. Ternary calculus at a tripotent: the three projectors split the
//    algebra, land in the right box eigenspaces, and multiply by the
//    composition rules.

Outcome peirce_calculus() {
  Rng rng(1001);
  Worst worst;
  const double tol = 1e-10;
  const triple::PeirceIndex indices[] = {triple::PeirceIndex::kOne,
                                         triple::PeirceIndex::kHalf,
                                         triple::PeirceIndex::kZero};
  const double values[] = {1.0, 0.5, 0.0};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sample_dim(rng, 2, 16);
    const Tripotent e = random_tripotent(rng, n);
    ComplexMatrix z = random_matrix(rng, n);
    z /= operator_norm(z);
    const auto [z1, zh, z0] = triple::peirce_decompose(e, z);
    const ComplexMatrix parts[] = {z1, zh, z0};
    worst.note(operator_norm(z - (z1 + zh + z0)));
    for (int i = 0; i < 3; ++i) {
      // Projector algebra and the box eigenvalue of each component.
      worst.note(operator_norm(
          triple::peirce_project(e, indices[i], parts[i]) - parts[i]));
      worst.note(operator_norm(triple::box_apply(e.matrix, e.matrix,
                                                 parts[i]) -
                               values[i] * parts[i]));
      for (int j = 0; j < 3; ++j) {
        if (j != i) {
          worst.note(operator_norm(
              triple::peirce_project(e, indices[j], parts[i])));
        }
      }
    }
    // {Z_i Z_j Z_k} lands in Z_{i-j+k}; the unit and annihilator parts
    // kill each other outright.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const ComplexMatrix product =
              triple::triple_product(parts[i], parts[j], parts[k]);
          const bool annihilating =
              (values[i] == 1.0 && values[j] == 0.0) ||
              (values[i] == 0.0 && values[j] == 1.0);
          const double target = values[i] - values[j] + values[k];
          if (annihilating || target < -0.25 || target > 1.25) {
            worst.note(operator_norm(product));
            continue;
          }
          const triple::PeirceIndex slot =
              target > 0.75 ? triple::PeirceIndex::kOne
              : target > 0.25 ? triple::PeirceIndex::kHalf
                              : triple::PeirceIndex::kZero;
          worst.note(operator_norm(
              product - triple::peirce_project(e, slot, product)));
        }
      }
    }
  }
  return {worst.within(tol),
          "max residual " + fmt(worst.value) + " (tol " + fmt(tol) +
              ") over 200 tripotent/operand pairs"};
}

// ---------------------------------------------------------------------
// 2. The closed-form curve equals the unitary flow of the commutator
//    field at every time, and every sample is a valid projection.

Outcome flow_agreement() {
  Rng rng(1002);
  Worst worst;
  const double tol = 1e-8;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sample_dim(rng, 2, 16);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    const TangentVector u = random_tangent(rng, a, 1.4);
    for (double t : {-2.0, -1.0, -0.5, 0.3, 1.0, 2.0}) {
      const Projection gamma = geodesy::geodesic_point(a, u, t);
      const Projection flow = oracle::commutator_flow(a, u, t);
      worst.note(operator_norm(gamma.matrix - flow.matrix));
      manifold::make_projection(gamma.matrix, 1e-10);  // throws on failure
      if (gamma.rank != a.rank) {
        return {false, "rank drifted along the curve"};
      }
    }
  }
  return {worst.within(tol),
          "max |curve - flow| " + fmt(worst.value) + " (tol " + fmt(tol) +
              ") over 200 curves x 6 times"};
}

// ---------------------------------------------------------------------
// 3. Exponential and logarithm invert each other on the injectivity
//    domain, and distinct targets keep distinct logarithms.

Outcome exp_log_inverse() {
  Rng rng(1003);
  Worst worst;
  const double tol = 1e-8;
  int witnesses = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sample_dim(rng, 2, 12);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    const TangentVector u = random_tangent(rng, a, 1.4);
    const Projection b = geodesy::exp_map(a, u);
    const TangentVector back = geodesy::log_map(a, b);
    worst.note(operator_norm(back.matrix - u.matrix));
    worst.note(operator_norm(geodesy::exp_map(a, back).matrix - b.matrix));
    const TangentVector v = random_tangent(rng, a, 1.4);
    const Projection c = geodesy::exp_map(a, v);
    if (operator_norm(b.matrix - c.matrix) > 1e-8) {
      if (operator_norm(geodesy::log_map(a, b).matrix -
                        geodesy::log_map(a, c).matrix) <= 1e-12) {
        return {false, "two distinct targets shared a logarithm"};
      }
      ++witnesses;
    }
  }
  if (witnesses < 100) {
    return {false, "too few distinct-target injectivity witnesses"};
  }
  return {worst.within(tol),
          "max round-trip drift " + fmt(worst.value) + " (tol " + fmt(tol) +
              ") over 200 pairs, " + std::to_string(witnesses) +
              " injectivity witnesses"};
}

// ---------------------------------------------------------------------
// 4. The distance: closed form on lines, the angle l2-form in general,
//    pi/2 at antipodes, the triangle inequality, unitary invariance.

Outcome distance_checks() {
  Rng rng(1004);
  Worst rank1;
  Worst angle_form;
  Worst unitary;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = sample_dim(rng, 2, 10);
    const Projection a = random_point(rng, n, 1);
    const Projection b = random_point(rng, n, 1);
    const double overlap = std::clamp(
        operator_norm(a.matrix * b.matrix * a.matrix), 0.0, 1.0);
    const double sine = (a.matrix - b.matrix).norm() / std::sqrt(2.0);
    rank1.note(std::abs(geodesy::distance(a, b) -
                        std::atan2(sine, std::sqrt(overlap))));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = sample_dim(rng, 2, 12);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    const Projection b = random_point(rng, n, r);
    double sum = 0.0;
    for (double theta : oracle::principal_angles(a, b)) sum += theta * theta;
    angle_form.note(std::abs(geodesy::distance(a, b) -
                             std::sqrt(sum / static_cast<double>(r))));
    const ComplexMatrix w = random_unitary(rng, n);
    const Projection wa =
        manifold::make_projection(w * a.matrix * w.adjoint());
    const Projection wb =
        manifold::make_projection(w * b.matrix * w.adjoint());
    unitary.note(
        std::abs(geodesy::distance(wa, wb) - geodesy::distance(a, b)));
  }
  Worst antipodal;
  for (int r = 1; r <= 4; ++r) {
    ComplexMatrix ma = ComplexMatrix::Zero(2 * r, 2 * r);
    ComplexMatrix mb = ComplexMatrix::Zero(2 * r, 2 * r);
    for (int k = 0; k < r; ++k) {
      ma(k, k) = 1.0;
      mb(r + k, r + k) = 1.0;
    }
    antipodal.note(std::abs(geodesy::distance(manifold::make_projection(ma),
                                              manifold::make_projection(mb)) -
                            kPi / 2.0));
  }
  int triangle_failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Projection a = random_point(rng, 6, 2);
    const Projection b = random_point(rng, 6, 2);
    const Projection c = random_point(rng, 6, 2);
    if (geodesy::distance(a, c) >
        geodesy::distance(a, b) + geodesy::distance(b, c) + 1e-9) {
      ++triangle_failures;
    }
  }
  const bool passed = rank1.within(1e-10) && angle_form.within(1e-12) &&
                      antipodal.within(1e-12) && unitary.within(1e-10) &&
                      triangle_failures == 0;
  return {passed, "line form " + fmt(rank1.value) +
                      " (tol 1e-10), angle form " +
                      fmt(angle_form.value) + " (tol 1e-12), antipodal " +
                      fmt(antipodal.value) + " (tol 1e-12), unitary " +
                      fmt(unitary.value) + " (tol 1e-10), triangle failures " +
                      std::to_string(triangle_failures) + "/500"};
}

// ---------------------------------------------------------------------
// 5. Midpoints and symmetries: the half-way point is equidistant, its
//    point symmetry swaps the endpoints, the symmetry is an involution,
//    and the transport unitary conjugates one point to the other while
//    preserving the ternary product.

Outcome midpoint_symmetry() {
  Rng rng(1005);
  Worst equidistance;
  Worst swap;
  Worst involution;
  Worst transport;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = sample_dim(rng, 2, 10);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    const Projection b = geodesy::exp_map(a, random_tangent(rng, a, 1.4));
    const Projection m = geodesy::midpoint(a, b);
    equidistance.note(
        std::abs(geodesy::distance(a, m) - geodesy::distance(m, b)));
    swap.note(operator_norm(geodesy::peirce_symmetry(m, a.matrix) -
                            b.matrix));
    const ComplexMatrix z = random_matrix(rng, n);
    involution.note(
        operator_norm(geodesy::peirce_symmetry(
            m, geodesy::peirce_symmetry(m, z)) -
                      z) /
        (1.0 + operator_norm(z)));
    const Projection c = random_point(rng, n, r);
    const ComplexMatrix w = geodesy::transport_automorphism(a, c);
    transport.note(operator_norm(w * a.matrix * w.adjoint() - c.matrix));
    const ComplexMatrix x = random_matrix(rng, n);
    const ComplexMatrix y = random_matrix(rng, n);
    const ComplexMatrix lhs =
        w * triple::triple_product(x, y, z) * w.adjoint();
    const ComplexMatrix rhs =
        triple::triple_product(w * x * w.adjoint(), w * y * w.adjoint(),
                               w * z * w.adjoint());
    transport.note(operator_norm(lhs - rhs) / (1.0 + operator_norm(lhs)));
  }
  const bool passed = equidistance.within(1e-8) && swap.within(1e-8) &&
                      involution.within(1e-12) && transport.within(1e-10);
  return {passed, "equidistance " + fmt(equidistance.value) +
                      " (tol 1e-8), endpoint swap " + fmt(swap.value) +
                      " (tol 1e-8), involution " + fmt(involution.value) +
                      " (tol 1e-12), transport " + fmt(transport.value) +
                      " (tol 1e-10)"};
}

// ---------------------------------------------------------------------
// 6. The metric: frame independent, positive, dominated by the squared
//    rotation rate, and constant along the closed-form curves.

Outcome metric_checks() {
  Rng rng(1006);
  Worst frames;
  Worst speed;
  const double speed_tol = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sample_dim(rng, 2, 10);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    const TangentVector u = random_tangent(rng, a, 1.4);
    const TangentVector v = random_tangent(rng, a, 1.4);
    const double reference = manifold::metric(a, u, v);
    frames.note(std::abs(manifold::metric_over_frame(manifold::frame_for(a),
                                                     u, v) -
                         reference));
    const ComplexMatrix basis =
        manifold::range_basis(a) * random_unitary(rng, r);
    Frame rotated;
    rotated.base = a;
    for (int k = 0; k < r; ++k) {
      rotated.vectors.push_back(basis.col(k));
      rotated.atoms.push_back(manifold::make_projection(
          basis.col(k) * basis.col(k).adjoint(), a.tol));
    }
    frames.note(std::abs(manifold::metric_over_frame(rotated, u, v) -
                         reference));
    const double energy = manifold::metric(a, u, u);
    const double rate = operator_norm(u.matrix);
    if (energy <= 0.0 && rate > 1e-6) {
      return {false, "metric failed to be positive on a nonzero vector"};
    }
    if (energy > rate * rate + 1e-12) {
      return {false, "metric exceeded the squared top rotation rate"};
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Projection a = random_point(rng, 8, 3);
    const TangentVector u = random_tangent(rng, a, 1.4);
    const double at_zero = manifold::metric(a, u, u);
    const double h = 1e-4;
    for (double t : {0.2, 0.7, 1.3}) {
      const Projection here = geodesy::geodesic_point(a, u, t);
      const ComplexMatrix fd =
          (geodesy::geodesic_point(a, u, t + h).matrix -
           geodesy::geodesic_point(a, u, t - h).matrix) /
          (2.0 * h);
      const TangentVector velocity = manifold::tangent_project(here, fd);
      speed.note(std::abs(manifold::metric(here, velocity, velocity) -
                          at_zero) /
                 (1.0 + at_zero));
    }
  }
  const bool passed = frames.within(1e-10) && speed.within(speed_tol);
  return {passed, "frame dependence " + fmt(frames.value) +
                      " (tol 1e-10), speed drift " + fmt(speed.value) +
                      " (tol " + fmt(speed_tol) + ")"};
}

// ---------------------------------------------------------------------
// 7. Acceleration: the closed-form curves are covariantly straight; a
//    reparametrized curve is visibly not.

Outcome acceleration_checks() {
  Rng rng(1007);
  Worst straight;
  double bent = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = sample_dim(rng, 2, 10);
    const int r = sample_dim(rng, 1, n - 1);
    const Projection a = random_point(rng, n, r);
    TangentVector u = random_tangent(rng, a, 1.4);
    while (operator_norm(u.matrix) < 0.5) {
      u = random_tangent(rng, a, 1.4);
    }
    const auto curve = [&](double t) {
      return geodesy::geodesic_point(a, u, t);
    };
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      straight.note(
          operator_norm(geodesy::covariant_acceleration(curve, t, 1e-3)
                            .matrix));
    }
    const auto bent_curve = [&](double t) {
      return geodesy::geodesic_point(a, u, t * t);
    };
    bent = std::max(
        bent, operator_norm(
                  geodesy::covariant_acceleration(bent_curve, 0.5, 1e-3)
                      .matrix));
  }
  const bool passed = straight.within(1e-5) && bent >= 1e-2;
  return {passed, "geodesic acceleration " + fmt(straight.value) +
                      " (tol 1e-5), reparametrized curve " + fmt(bent) +
                      " (must exceed 1e-2)"};
}

// ---------------------------------------------------------------------
// 8. The command-line pipeline end to end, including the seeded
//    cross-check suite at its default configuration.

struct CliRun {
  int exit_code = -1;
  std::string out;
};

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("jbt_acceptance_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

CliRun run_cli(const TempDir& dir, const std::string& args) {
  const std::string out_file = dir.path("out.txt");
  const std::string command = std::string("'") + JBT_CLI_PATH + "' " + args +
                              " >'" + out_file + "' 2>&1";
  const int raw = std::system(command.c_str());
  CliRun result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  result.out = std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
  return result;
}

Outcome cli_pipeline() {
  TempDir dir;
  ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  ComplexMatrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  io::write_projection(manifold::make_projection(e11), dir.path("a.json"));
  io::write_projection(manifold::make_projection(half), dir.path("b.json"));

  if (run_cli(dir, "gen --n 6 --rank 2 --seed 4 -o '" + dir.path("p.json") +
                       "'")
          .exit_code != 0) {
    return {false, "gen failed"};
  }
  if (run_cli(dir, "check '" + dir.path("p.json") + "'").exit_code != 0) {
    return {false, "check rejected a generated point"};
  }

  const CliRun dist =
      run_cli(dir, "dist '" + dir.path("a.json") + "' '" + dir.path("b.json") +
                       "'");
  if (dist.exit_code != 0) return {false, "dist failed"};
  const double d = std::stod(dist.out.substr(0, dist.out.find('\n')));
  if (std::abs(d - kPi / 4.0) > 1e-12) {
    return {false, "dist printed " + dist.out.substr(0, dist.out.find('\n')) +
                       ", expected pi/4 within 1e-12"};
  }

  if (run_cli(dir, "logmap '" + dir.path("a.json") + "' '" +
                       dir.path("b.json") + "' -o '" + dir.path("u.json") +
                       "'")
          .exit_code != 0) {
    return {false, "logmap failed"};
  }
  if (run_cli(dir, "expmap '" + dir.path("a.json") + "' '" +
                       dir.path("u.json") + "' -o '" + dir.path("c.json") +
                       "'")
          .exit_code != 0) {
    return {false, "expmap failed"};
  }
  const Projection c = io::read_projection(dir.path("c.json"));
  if (operator_norm(c.matrix - half) > 1e-10) {
    return {false, "logmap/expmap round trip missed the target"};
  }

  if (run_cli(dir, "geodesic '" + dir.path("a.json") + "' --to '" +
                       dir.path("b.json") + "' --samples 8 -o '" +
                       dir.path("path.json") + "'")
          .exit_code != 0) {
    return {false, "geodesic failed"};
  }
  const io::GeodesicPath path = io::read_path(dir.path("path.json"));
  if (path.samples.size() != 9) {
    return {false, "geodesic wrote the wrong number of samples"};
  }
  for (const io::PathSample& sample : path.samples) {
    manifold::make_projection(sample.projection.matrix, 1e-8);
  }
  if (operator_norm(path.samples.back().projection.matrix - half) > 1e-8) {
    return {false, "geodesic missed its target"};
  }

  const auto start = std::chrono::steady_clock::now();
  const CliRun selftest = run_cli(dir, "selftest");
  const double selftest_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (selftest.exit_code != 0) {
    return {false, "selftest failed:\n" + selftest.out};
  }
  if (selftest_seconds >= 60.0) {
    return {false, "selftest took " + fmt(selftest_seconds) +
                       " s (limit 60 s)"};
  }
  return {true, "gen/check/dist/logmap/expmap/geodesic ok, selftest passed "
                "in " +
                    fmt(selftest_seconds) + " s (limit 60 s)"};
}

}  // namespace
}  // namespace jbt

int main() {
  using jbt::Outcome;
  struct Criterion {
    const char* name;
    double time_limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"peirce-calculus", 10.0, jbt::peirce_calculus},
      {"flow-agreement", 30.0, jbt::flow_agreement},
      {"exp-log-inverse", 60.0, jbt::exp_log_inverse},
      {"distance", 60.0, jbt::distance_checks},
      {"midpoint-symmetry", 60.0, jbt::midpoint_symmetry},
      {"metric", 60.0, jbt::metric_checks},
      {"acceleration", 60.0, jbt::acceleration_checks},
      {"cli-pipeline", 120.0, jbt::cli_pipeline},
  };
  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (seconds > criterion.time_limit_seconds) {
      outcome.passed = false;
      outcome.detail += " [exceeded the time limit]";
    }
    std::printf("[%s] %-18s %s [%.2f s / %.0f s]\n",
                outcome.passed ? "PASS" : "FAIL", criterion.name,
                outcome.detail.c_str(), seconds,
                criterion.time_limit_seconds);
    std::fflush(stdout);
    if (!outcome.passed) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n",
                std::size(criteria));
    return 0;
  }
  std::printf("acceptance: %d of %zu criteria FAILED\n", failures,
              std::size(criteria));
  return 1;
}
