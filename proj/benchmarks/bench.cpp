#include <benchmark/benchmark.h>

#include "comdyn/commutant.hpp"
#include "comdyn/dynamics.hpp"
#include "comdyn/parse.hpp"
#include "comdyn/veronese.hpp"

namespace {

using namespace comdyn;

const FieldSpec kQ = FieldSpec::rationals();

void BM_Compose(benchmark::State& state) {
  const PolyMap f = parse_poly_map("(x^3 + 2*x*y - y + 1, y^3 - x^2*y + 3)", kQ);
  const auto depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate(f, depth));
}
BENCHMARK(BM_Compose)->Arg(1)->Arg(2);

void BM_OrbitCyclotomic(benchmark::State& state) {
  const FieldSpec k = FieldSpec::cyclotomic(static_cast<std::uint32_t>(state.range(0)));
  const PolyMap f = parse_poly_map("(y^2, x^2)", k);
  const Point p = parse_point("zeta, zeta^2", k);
  for (auto _ : state) benchmark::DoNotOptimize(orbit(f, p, 10'000));
}
BENCHMARK(BM_OrbitCyclotomic)->Arg(7)->Arg(31)->Arg(101);

void BM_Catalog(benchmark::State& state) {
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  const auto strategy = CatalogStrategy::parse("bounded:H:" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_catalog(f, strategy));
}
BENCHMARK(BM_Catalog)->Arg(1)->Arg(3)->Arg(6);

void BM_Frame(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto pts = bounded_height_points(2, HeightValue::parse("H:4"));
  for (auto _ : state) benchmark::DoNotOptimize(find_general_position(pts, kQ, 2, d));
}
BENCHMARK(BM_Frame)->DenseRange(1, 4);

void BM_CommutantCatalog(benchmark::State& state) {
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  const auto catalog = build_catalog(f, CatalogStrategy::parse("bounded:0"));
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(commutant_search(f, 2, catalog, kDefaultAssignmentCap, threads));
}
BENCHMARK(BM_CommutantCatalog)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CommutantGrid(benchmark::State& state) {
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  GridSpec grid;
  grid.coeff_bound = 1;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_commutant(f, 1, grid));
}
BENCHMARK(BM_CommutantGrid)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
