#include "jbt/geodesy.hpp"
#include "jbt/io.hpp"
#include "jbt/manifold.hpp"
#include "jbt/oracle.hpp"
#include "jbt/suite.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <string>

namespace {

using namespace jbt;

// Shortest decimal form that parses back to the same double.
std::string fmt(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, ptr);
}

std::string fmt(const Complex& z) {
  std::string s = fmt(z.real());
  s += std::signbit(z.imag()) ? '-' : '+';
  s += fmt(std::abs(z.imag()));
  s += 'i';
  return s;
}

double tol_from_env() {
  const char* env = std::getenv("JBT_TOL");
  if (env == nullptr) return kDefaultTol;
  const std::string text(env);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0.0) {
    throw ValidationError("JBT_TOL must be a positive number, got \"" + text +
                          "\"");
  }
  return value;
}

TangentVector rebase(const Projection& a, const TangentVector& u,
                     double tol) {
  require_same_dim(a.matrix, u.matrix, "tangent");
  if (operator_norm(u.base.matrix - a.matrix) >
      tol * (1.0 + operator_norm(a.matrix))) {
    throw ValidationError(
        "tangent file is based at a different projection than the given "
        "source");
  }
  return manifold::checked_tangent(a, u.matrix, tol);
}

void print_check(const io::AnyValue& value, double tol) {
  if (value.kind == io::Kind::kTangent) {
    const TangentVector& u = *value.tangent;
    std::cout << "kind: tangent\n";
    std::cout << "n: " << u.dim() << '\n';
    std::cout << "base rank: " << u.base.rank << '\n';
    std::cout << "hermiticity residual: "
              << fmt(hermiticity_residual(u.matrix)) << '\n';
    return;
  }
  const Projection p = value.projection
                           ? *value.projection
                           : manifold::make_projection(value.matrix, tol);
  std::cout << "rank: " << p.rank << '\n';
  std::cout << "hermiticity residual: " << fmt(p.herm_residual) << '\n';
  std::cout << "idempotency residual: " << fmt(p.idem_residual) << '\n';
}

void print_frame(const Frame& frame) {
  std::cout << "n: " << frame.base.dim() << '\n';
  std::cout << "rank: " << frame.base.rank << '\n';
  for (int k = 0; k < frame.size(); ++k) {
    std::cout << "alpha_" << (k + 1) << ':';
    const Vector& alpha = frame.vectors[k];
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      std::cout << ' ' << fmt(alpha(i));
    }
    std::cout << '\n';
  }
}

int run_selftest(const oracle::SuiteConfig& config) {
  std::cout << "selftest n=" << config.n << " rank=" << config.r
            << " trials=" << config.trials << " seed=" << config.seed
            << " tol=" << fmt(config.tol) << '\n';
  const std::vector<oracle::OracleReport> reports =
      oracle::run_suite(config);
  int failed = 0;
  for (const oracle::OracleReport& report : reports) {
    std::cout << std::left << std::setw(32) << report.name << std::right
              << std::setw(7) << report.samples << "  " << std::left
              << std::setw(24) << fmt(report.max_residual) << std::setw(10)
              << fmt(report.tolerance) << (report.passed ? "ok" : "FAIL")
              << '\n';
    if (!report.passed) ++failed;
  }
  if (failed == 0) {
    std::cout << "all " << reports.size() << " checks passed\n";
    return 0;
  }
  std::cout << failed << " of " << reports.size() << " checks failed\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of fixed-rank orthogonal projections"};
  app.require_subcommand(1);
  int exit_code = 0;
  double tol = kDefaultTol;

  try {
    tol = tol_from_env();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  auto* gen = app.add_subcommand("gen", "Write a seeded random projection");
  int gen_n = 0;
  int gen_rank = 0;
  unsigned long long gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "ambient dimension (at most 64)")->required();
  gen->add_option("--rank", gen_rank, "rank of the projection")->required();
  gen->add_option("--seed", gen_seed, "random seed (default 1)");
  gen->add_option("-o,--output", gen_out, "output file")->required();
  gen->callback([&] {
    if (gen_n < 1 || gen_n > 64) {
      throw ValidationError("gen: n must be between 1 and 64");
    }
    if (gen_rank < 1 || gen_rank > gen_n) {
      throw ValidationError("gen: rank must be between 1 and n");
    }
    io::write_projection(
        manifold::random_projection(gen_n, gen_rank, gen_seed, tol), gen_out);
  });

  auto* check = app.add_subcommand("check", "Validate a matrix file");
  std::string check_file;
  double check_tol = tol;
  check->add_option("file", check_file)->required();
  check->add_option("--tol", check_tol, "validation tolerance");
  check->callback(
      [&] { print_check(io::read_any(check_file, check_tol), check_tol); });

  auto* dist = app.add_subcommand(
      "dist", "Riemann distance and principal angles between two points");
  std::string dist_a;
  std::string dist_b;
  dist->add_option("a", dist_a)->required();
  dist->add_option("b", dist_b)->required();
  dist->callback([&] {
    const Projection a = io::read_projection(dist_a, tol);
    const Projection b = io::read_projection(dist_b, tol);
    std::cout << fmt(geodesy::distance(a, b)) << '\n';
    std::cout << "angles:";
    for (double theta : oracle::principal_angles(a, b)) {
      std::cout << ' ' << fmt(theta);
    }
    std::cout << '\n';
  });

  auto* logmap = app.add_subcommand(
      "logmap", "Velocity of the unique geodesic joining two points");
  std::string log_a;
  std::string log_b;
  std::string log_out;
  logmap->add_option("a", log_a)->required();
  logmap->add_option("b", log_b)->required();
  logmap->add_option("-o,--output", log_out)->required();
  logmap->callback([&] {
    const Projection a = io::read_projection(log_a, tol);
    const Projection b = io::read_projection(log_b, tol);
    io::write_tangent(geodesy::log_map(a, b), log_out);
  });

  auto* expmap =
      app.add_subcommand("expmap", "Geodesic endpoint Exp_a(u) at t = 1");
  std::string exp_a;
  std::string exp_u;
  std::string exp_out;
  expmap->add_option("a", exp_a)->required();
  expmap->add_option("u", exp_u)->required();
  expmap->add_option("-o,--output", exp_out)->required();
  expmap->callback([&] {
    const Projection a = io::read_projection(exp_a, tol);
    const TangentVector u = rebase(a, io::read_tangent(exp_u, tol), tol);
    const double rate = operator_norm(u.matrix);
    if (rate >= 1.0 && rate < std::numbers::pi / 2) {
      std::cerr << "note: velocity norm " << fmt(rate)
                << " is beyond 1 but still inside the injectivity domain\n";
    }
    io::write_projection(geodesy::exp_map(a, u), exp_out);
  });

  auto* geodesic = app.add_subcommand(
      "geodesic", "Sample a geodesic on t in [0,1] into a path file");
  std::string geo_a;
  std::string geo_to;
  std::string geo_vel;
  std::string geo_out;
  int geo_samples = 0;
  geodesic->add_option("source", geo_a)->required();
  auto* to_opt =
      geodesic->add_option("--to", geo_to, "target projection file");
  auto* vel_opt = geodesic->add_option(
      "--velocity", geo_vel, "tangent file, or the literal 0");
  to_opt->excludes(vel_opt);
  vel_opt->excludes(to_opt);
  geodesic->add_option("--samples", geo_samples, "number of steps K")
      ->required();
  geodesic->add_option("-o,--output", geo_out)->required();
  geodesic->callback([&] {
    if (geo_samples < 1) {
      throw ValidationError("geodesic: --samples must be at least 1");
    }
    if (geo_to.empty() == geo_vel.empty()) {
      throw ValidationError(
          "geodesic: provide exactly one of --to and --velocity");
    }
    const Projection a = io::read_projection(geo_a, tol);
    io::GeodesicPath path;
    path.source = a;
    geodesy::GeodesicSpec spec;
    if (!geo_to.empty()) {
      const Projection b = io::read_projection(geo_to, tol);
      const geodesy::ConnectData data = geodesy::connect(a, b);
      path.target = b;
      path.angles = data.angles;
      path.distance = geodesy::distance(a, b);
      spec = geodesy::geodesic_spec(data);
    } else {
      const TangentVector u =
          geo_vel == "0"
              ? TangentVector{a, ComplexMatrix::Zero(a.dim(), a.dim())}
              : rebase(a, io::read_tangent(geo_vel, tol), tol);
      spec = geodesy::geodesic_spec(a, u);
      for (const geodesy::GeodesicComponent& component : spec.components) {
        path.angles.push_back(component.angle);
      }
    }
    for (int i = 0; i <= geo_samples; ++i) {
      const double t = static_cast<double>(i) / geo_samples;
      path.samples.push_back({t, geodesy::geodesic_eval(spec, t)});
    }
    if (geo_to.empty()) {
      path.distance = geodesy::distance(a, path.samples.back().projection);
    }
    io::write_path(path, geo_out);
  });

  auto* midpoint =
      app.add_subcommand("midpoint", "Half-way point of the joining geodesic");
  std::string mid_a;
  std::string mid_b;
  std::string mid_out;
  midpoint->add_option("a", mid_a)->required();
  midpoint->add_option("b", mid_b)->required();
  midpoint->add_option("-o,--output", mid_out)->required();
  midpoint->callback([&] {
    const Projection a = io::read_projection(mid_a, tol);
    const Projection b = io::read_projection(mid_b, tol);
    io::write_projection(geodesy::midpoint(a, b), mid_out);
  });

  auto* symmetry = app.add_subcommand(
      "symmetry", "Apply the Peirce symmetry with the given center");
  std::string sym_center;
  std::string sym_arg;
  std::string sym_out;
  symmetry->add_option("center", sym_center)->required();
  symmetry->add_option("z", sym_arg)->required();
  symmetry->add_option("-o,--output", sym_out)->required();
  symmetry->callback([&] {
    const Projection center = io::read_projection(sym_center, tol);
    const io::AnyValue value = io::read_any(sym_arg, tol);
    require_same_dim(center.matrix, value.matrix, "symmetry");
    switch (value.kind) {
      case io::Kind::kMatrix:
        io::write_matrix(geodesy::peirce_symmetry(center, value.matrix),
                         sym_out);
        break;
      case io::Kind::kProjection:
        io::write_projection(
            manifold::make_projection(
                geodesy::peirce_symmetry(center, value.matrix), tol),
            sym_out);
        break;
      case io::Kind::kTangent: {
        const Projection base = manifold::make_projection(
            geodesy::peirce_symmetry(center, value.tangent->base.matrix),
            tol);
        io::write_tangent(
            manifold::checked_tangent(
                base, geodesy::peirce_symmetry(center, value.matrix), tol),
            sym_out);
        break;
      }
    }
  });

  auto* frame = app.add_subcommand(
      "frame", "Print a frame of a point, or the frame adapted to a tangent");
  std::string frame_a;
  std::string frame_u;
  frame->add_option("a", frame_a)->required();
  frame->add_option("--tangent", frame_u, "tangent file");
  frame->callback([&] {
    const Projection a = io::read_projection(frame_a, tol);
    if (frame_u.empty()) {
      print_frame(manifold::frame_for(a));
      return;
    }
    const TangentVector u = rebase(a, io::read_tangent(frame_u, tol), tol);
    const SpectralData data = manifold::spectral_decompose(u);
    print_frame(manifold::associated_frame(data));
    std::cout << "k rho theta\n";
    for (int k = 0; k < data.count(); ++k) {
      std::cout << (k + 1) << ' ' << fmt(data.singular_values[k]) << ' '
                << fmt(data.singular_values[k]) << '\n';
    }
  });

  auto* selftest = app.add_subcommand(
      "selftest", "Run the seeded oracle cross-check suite");
  oracle::SuiteConfig config;
  selftest->add_option("--n", config.n, "ambient dimension (default 8)");
  selftest->add_option("--rank", config.r, "rank (default 3)");
  selftest->add_option("--trials", config.trials,
                       "trials per check (default 100)");
  selftest->add_option("--seed", config.seed, "random seed (default 1)");
  selftest->add_option("--tol", config.tol,
                       "tolerance for unpinned checks (default 1e-8)");
  selftest->callback([&] { exit_code = run_selftest(config); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
