#include <benchmark/benchmark.h>

#include <random>

#include "cavlat/lattice.hpp"
#include "cavlat/spin_xy.hpp"
#include "cavlat/star_transform.hpp"

namespace {

using namespace cavlat;

void BM_EigHermitian(benchmark::State& state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  const HermitianMatrix h(0.5 * (a + a.adjoint()));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(16)->Arg(64)->Arg(256);

void BM_DressStar(benchmark::State& state) {
  const StarParams p = StarParams::uniform(static_cast<int>(state.range(0)), 6.0, 6.5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(dress_star(p));
}
BENCHMARK(BM_DressStar)->DenseRange(2, 6, 2);

void BM_KagomeBands(benchmark::State& state) {
  const auto model = build_kagome(LatticeSpec::kagome(4, 4, Boundary::periodic),
                                  StarParams::uniform(3, 6.0, 6.5, 0.1));
  const KGrid grid{static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(band_structure(model, grid));
}
BENCHMARK(BM_KagomeBands)->Arg(16)->Arg(32);

void BM_BuildXY(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto chain = build_chain(LatticeSpec::chain(m, Boundary::periodic), EffectiveParams{0.1, 0.0});
  const auto bonds = spin_bonds(chain);
  for (auto _ : state) benchmark::DoNotOptimize(build_xy(m, bonds, 1.0));
}
BENCHMARK(BM_BuildXY)->Arg(8)->Arg(12)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
