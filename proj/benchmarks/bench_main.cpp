#include <benchmark/benchmark.h>

#include <random>

#include "tlab/attacks.hpp"
#include "tlab/protocol.hpp"
#include "tlab/thompson.hpp"

using namespace tlab;

namespace {

Word random_word(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> idx(0, 20);
    Word w(n);
    for (auto& a : w) a = {idx(rng), (rng() & 1) != 0};
    return w;
}

void BM_Normalize(benchmark::State& state) {
    const Word w = random_word(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(normalize(w));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Normalize)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_Multiply(benchmark::State& state) {
    RandomStream rng(2);
    const int L = static_cast<int>(state.range(0));
    const auto a = sample_element(SubgroupId::W, 3, L, rng);
    const auto b = sample_element(SubgroupId::W, 3, L, rng);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(BM_Multiply)->Arg(32)->Arg(256)->Arg(1024);

// One beam step's worth of work: 2k children per entry.
void BM_AttackStep(benchmark::State& state) {
    RandomStream rng(3);
    const auto inst = generate_instance({3, 256}, rng);
    auto eq = four_equations(inst)[0];
    eq.true_left.reset();
    AttackConfig cfg;
    cfg.M = static_cast<int>(state.range(0));
    cfg.step_bound = 8;
    cfg.repetition_filter = true;
    for (auto _ : state) benchmark::DoNotOptimize(beam_attack(eq, cfg));
    state.SetItemsProcessed(state.iterations() * 8 * cfg.M * 6);
}
BENCHMARK(BM_AttackStep)->Arg(1)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CanonicalKey(benchmark::State& state) {
    RandomStream rng(4);
    const auto a = sample_element(SubgroupId::W, 3, 256, rng);
    for (auto _ : state) benchmark::DoNotOptimize(fingerprint(a));
}
BENCHMARK(BM_CanonicalKey);

}  // namespace

BENCHMARK_MAIN();
