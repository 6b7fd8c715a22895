#include <benchmark/benchmark.h>

#include <random>

#include "mtg/autgroup.hpp"
#include "mtg/corpus.hpp"
#include "mtg/galois.hpp"
#include "mtg/permgroup.hpp"

using namespace mtg;

namespace {

const Structure& gf16() {
  static const Structure m = load_corpus("GF16");
  return m;
}

// Disjoint union of four directed 4-cycles: 16 points, |Aut| = 4^4 * 4!.
const Structure& cycles16() {
  static const Structure m = [] {
    std::string src = "structure Q { universe = { ";
    for (int i = 0; i < 16; ++i) src += (i ? ", q" : "q") + std::to_string(i);
    src += " } rel E/2 = { ";
    for (int i = 0; i < 16; ++i) {
      const int j = (i / 4) * 4 + (i + 1) % 4;
      src += (i ? ", (q" : "(q") + std::to_string(i) + ",q" + std::to_string(j) + ")";
    }
    return load_structure(src + " } }");
  }();
  return m;
}

const PermGroup& s5() {
  static const PermGroup g =
      close_group(5, {parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(0 1)", 5)});
  return g;
}

const PermGroup& wreath() {
  static const PermGroup g = close_group(
      6, {parse_cycles("(0 1)", 6), parse_cycles("(0 2 4)(1 3 5)", 6), parse_cycles("(0 2)(1 3)", 6)});
  return g;
}

std::vector<std::uint64_t> random_masks(unsigned width, std::size_t count) {
  std::mt19937_64 rng(5);
  const std::uint64_t all = (std::uint64_t{1} << width) - 1;
  std::vector<std::uint64_t> out{all};
  for (std::size_t i = 0; i < count; ++i) out.push_back(rng() & rng() & all);
  return out;
}

void BM_AutGF16Parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(automorphism_group(gf16()).order());
}
void BM_AutGF16Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(automorphism_group_serial(gf16()).order());
}
void BM_AutCyclesParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(automorphism_group(cycles16()).order());
}
void BM_AutCyclesSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(automorphism_group_serial(cycles16()).order());
}
void BM_SubgroupsS5Parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(all_subgroups(s5()).size());
}
void BM_SubgroupsS5Serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(all_subgroups_serial(s5()).size());
}
void BM_SubgroupsWreathParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(all_subgroups(wreath()).size());
}
void BM_SubgroupsWreathSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(all_subgroups_serial(wreath()).size());
}
void BM_IntermediateParallel(benchmark::State& s) {
  const auto masks = random_masks(static_cast<unsigned>(s.range(0)), 64);
  const std::uint64_t free_mask = (std::uint64_t{1} << s.range(0)) - 1;
  for (auto _ : s) benchmark::DoNotOptimize(closed_intermediate_masks(masks, free_mask).size());
}
void BM_IntermediateSerial(benchmark::State& s) {
  const auto masks = random_masks(static_cast<unsigned>(s.range(0)), 64);
  const std::uint64_t free_mask = (std::uint64_t{1} << s.range(0)) - 1;
  for (auto _ : s) benchmark::DoNotOptimize(closed_intermediate_masks_serial(masks, free_mask).size());
}

}  // namespace

BENCHMARK(BM_AutGF16Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AutGF16Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AutCyclesParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AutCyclesSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SubgroupsS5Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubgroupsS5Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubgroupsWreathParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubgroupsWreathSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntermediateParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntermediateSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
