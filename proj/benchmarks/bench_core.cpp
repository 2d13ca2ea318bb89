#include "jbt/geodesy.hpp"
#include "jbt/manifold.hpp"
#include "jbt/triple.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace jbt;

ComplexMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

TangentVector fixture_tangent(const Projection& a, unsigned long long seed,
                              double rate) {
  std::mt19937_64 rng(seed);
  TangentVector u =
      manifold::tangent_project(a, random_matrix(rng, a.dim()));
  const double norm = operator_norm(u.matrix);
  if (norm > 0) u.matrix *= rate / norm;
  return u;
}

void BM_TripleProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  const ComplexMatrix x = random_matrix(rng, n);
  const ComplexMatrix y = random_matrix(rng, n);
  const ComplexMatrix z = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(triple::triple_product(x, y, z));
  }
}
BENCHMARK(BM_TripleProduct)->Arg(8)->Arg(32)->Arg(64);

void BM_PeirceProject(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  const Tripotent e =
      manifold::random_projection(n, n / 2, 1).as_tripotent();
  const ComplexMatrix z = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        triple::peirce_project(e, triple::PeirceIndex::kHalf, z));
  }
}
BENCHMARK(BM_PeirceProject)->Arg(8)->Arg(32)->Arg(64);

void BM_SpectralDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Projection a = manifold::random_projection(n, n / 2, 1);
  const TangentVector u = fixture_tangent(a, 11, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(manifold::spectral_decompose(u));
  }
}
BENCHMARK(BM_SpectralDecompose)->Arg(8)->Arg(32)->Arg(64);

void BM_GeodesicPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Projection a = manifold::random_projection(n, n / 2, 1);
  const TangentVector u = fixture_tangent(a, 11, 1.0);
  const geodesy::GeodesicSpec spec = geodesy::geodesic_spec(a, u);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.25;
    benchmark::DoNotOptimize(geodesy::geodesic_eval(spec, t));
  }
}
BENCHMARK(BM_GeodesicPoint)->Arg(8)->Arg(32)->Arg(64);

void BM_ExpLog(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Projection a = manifold::random_projection(n, n / 2, 1);
  const TangentVector u = fixture_tangent(a, 11, 1.2);
  for (auto _ : state) {
    const Projection b = geodesy::exp_map(a, u);
    benchmark::DoNotOptimize(geodesy::log_map(a, b));
  }
}
BENCHMARK(BM_ExpLog)->Arg(8)->Arg(32);

void BM_Distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Projection a = manifold::random_projection(n, n / 2, 1);
  const Projection b = manifold::random_projection(n, n / 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesy::distance(a, b));
  }
}
BENCHMARK(BM_Distance)->Arg(8)->Arg(32)->Arg(64);

void BM_Connect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Projection a = manifold::random_projection(n, n / 2, 1);
  const TangentVector u = fixture_tangent(a, 11, 1.0);
  const Projection b = geodesy::exp_map(a, u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesy::connect(a, b));
  }
}
BENCHMARK(BM_Connect)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
