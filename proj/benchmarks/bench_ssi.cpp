#include <benchmark/benchmark.h>

#include <random>

#include "ssi/catalog.hpp"
#include "ssi/search.hpp"
#include "ssi/text.hpp"

namespace {

const char* const aristotle = "~(p |> ~p)";
const char* const nested = "dia (p |> q) -> ((p |> q) |> (dia (q |> r) -> ((q |> r) |> (dia p -> (p |> r)))))";

void BM_ValidUpTo_Aristotle(benchmark::State& state) {
  const ssi::Formula f = ssi::parse(aristotle);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ssi::valid_up_to(f, ssi::FrameClass::s2_0(), n));
}
BENCHMARK(BM_ValidUpTo_Aristotle)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ValidUpTo_NestedTransitivity(benchmark::State& state) {
  const ssi::Formula f = ssi::parse(nested);
  for (auto _ : state) benchmark::DoNotOptimize(ssi::valid_up_to(f, ssi::FrameClass::s3(), 3));
}
BENCHMARK(BM_ValidUpTo_NestedTransitivity)->Unit(benchmark::kMillisecond);

void BM_ValidUpTo_Threads(benchmark::State& state) {
  const ssi::Formula f = ssi::parse("(p |> q) -> ~(p |> ~q)");
  const ssi::SearchOptions opts{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ssi::valid_up_to(f, ssi::FrameClass::s2_0(), 3, opts));
}
BENCHMARK(BM_ValidUpTo_Threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ssi::run_suite(3).all_passed());
}
BENCHMARK(BM_Suite)->Unit(benchmark::kMillisecond);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ssi::parse(nested));
}
BENCHMARK(BM_Parse);

void BM_PrintRoundTrip(benchmark::State& state) {
  const ssi::Formula f = ssi::parse(nested);
  for (auto _ : state) benchmark::DoNotOptimize(ssi::parse(ssi::print(f)));
}
BENCHMARK(BM_PrintRoundTrip);

void BM_Eval(benchmark::State& state) {
  const ssi::Formula f = ssi::parse(nested);
  const auto frames = ssi::enumerate_frames(3, ssi::FrameClass::s3());
  std::mt19937 rng(1);
  std::vector<ssi::Model> models;
  for (const auto& fr : frames)
    models.emplace_back(fr, ssi::Model::Valuation{{"p", ssi::WorldSet(rng() & 7)},
                                                  {"q", ssi::WorldSet(rng() & 7)},
                                                  {"r", ssi::WorldSet(rng() & 7)}});
  for (auto _ : state)
    for (const auto& m : models) benchmark::DoNotOptimize(ssi::extension(m, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(models.size()));
}
BENCHMARK(BM_Eval);

}  // namespace

BENCHMARK_MAIN();
