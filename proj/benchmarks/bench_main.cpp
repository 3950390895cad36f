#include "divdiv/box_elements.hpp"
#include "divdiv/global_space.hpp"
#include "divdiv/linalg.hpp"
#include "divdiv/random.hpp"
#include "divdiv/tet_elements.hpp"

#include <benchmark/benchmark.h>

using namespace divdiv;

namespace {

// Dense random rational matrix; entries stay small so timing tracks elimination, not bignum growth.
RatMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  RationalRng rng(seed);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next();
  return m;
}

void BM_ExactRank(benchmark::State& state) {
  const RatMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(m).rank);
}
BENCHMARK(BM_ExactRank)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BoxElement(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const CuboidElement cell(Box{{0, 0, 0}, {1, 1, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(make_box_element(BoxFamily::Sigma, k, cell).dofs.size());
}
BENCHMARK(BM_BoxElement)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TetElement(benchmark::State& state) {
  const TetElement cell = reference_tet();
  for (auto _ : state) benchmark::DoNotOptimize(make_tet_element(TetFamily::Sigma, 3, cell).dofs.size());
}
BENCHMARK(BM_TetElement)->Unit(benchmark::kMillisecond);

void BM_AssembleBox(benchmark::State& state) {
  const MeshComplex mesh = build_box_mesh(static_cast<int>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_global_space(mesh, SpaceFamily::U, 3).dim);
}
BENCHMARK(BM_AssembleBox)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
