#include <benchmark/benchmark.h>

#include "decat/canon.hpp"
#include "decat/constructions.hpp"
#include "decat/enumerate.hpp"
#include "decat/hom_search.hpp"
#include "decat/presets.hpp"
#include "decat/ring.hpp"

namespace {

using namespace decat;

Instance cycle(std::size_t n) {
  std::vector<std::string> vs = index_ids(n), es;
  ElemTable actions(2);
  for (std::size_t i = 0; i < n; ++i) {
    es.push_back("e" + vs[i]);
    actions[0].push_back(static_cast<Elem>(i));
    actions[1].push_back(static_cast<Elem>((i + 1) % n));
  }
  return Instance(builtin_schema("digraph"), {vs, es}, std::move(actions));
}

void BM_CountHomsCycles(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto x = cycle(n);
  auto y = product(cycle(n), cycle(n)).product;
  for (auto _ : state) benchmark::DoNotOptimize(count_homs(x, y));
}
BENCHMARK(BM_CountHomsCycles)->Arg(3)->Arg(6)->Arg(12);

void BM_CanonicalFormProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto sum = coproduct(cycle(n), cycle(n)).sum;
  auto p = product(sum, cycle(n)).product;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(p));
}
BENCHMARK(BM_CanonicalFormProduct)->Arg(2)->Arg(3)->Arg(4);

void BM_EnumerateDigraphs(benchmark::State& state) {
  auto s = builtin_schema("digraph");
  auto b = Bounds::uniform(*s, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_instances(s, b).size());
}
BENCHMARK(BM_EnumerateDigraphs)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MulClasses(benchmark::State& state) {
  auto x = class_of(coproduct(cycle(3), cycle(2)).sum);
  for (auto _ : state) benchmark::DoNotOptimize(mul(x, x).support_size());
}
BENCHMARK(BM_MulClasses);

}  // namespace

BENCHMARK_MAIN();
