#include <benchmark/benchmark.h>

#include "amm/analytics.hpp"
#include "amm/cfmm.hpp"
#include "amm/invariant_lab.hpp"
#include "amm/sim.hpp"
#include "amm/token_swap.hpp"

using namespace amm;

static void BM_ConstantProductSwap(benchmark::State& state) {
    const auto pool = PoolState::constant_product("alpha", 1e6, "beta", 2e6, FeeParam(0.997));
    for (auto _ : state) benchmark::DoNotOptimize(cfmm::swap(pool, "beta", Amount(1234.5)));
}
BENCHMARK(BM_ConstantProductSwap);

static void BM_ConstantMeanSwap(benchmark::State& state) {
    const auto pool = PoolState::constant_mean(
        {{"eth", Amount(800), 0.8}, {"usd", Amount(2e5), 0.2}}, FeeParam(0.997));
    for (auto _ : state) benchmark::DoNotOptimize(cfmm::swap(pool, "usd", Amount(1000)));
}
BENCHMARK(BM_ConstantMeanSwap);

static void BM_TokenSwap(benchmark::State& state) {
    const auto s = TokenSwapState::make(100, 100, 1000, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(tsmm::swap_via_intermediary(s, Side::B, Amount(10)));
}
BENCHMARK(BM_TokenSwap);

static void BM_ArbitrageToPrice(benchmark::State& state) {
    const auto pool = PoolState::constant_product("alpha", 1e6, "beta", 2e6);
    for (auto _ : state) benchmark::DoNotOptimize(analytics::arbitrage_to_price(pool, Price(2.1)));
}
BENCHMARK(BM_ArbitrageToPrice);

static void BM_DeriveCurve(benchmark::State& state) {
    const auto rule = lab::PricingRule::weighted_ratio(0.6, 0.4);
    const auto steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lab::derive_curve(rule, {100, 100}, 400, steps));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DeriveCurve)->Arg(1000)->Arg(10000);

static void BM_Simulation(benchmark::State& state) {
    const auto ticks = static_cast<std::size_t>(state.range(0));
    const sim::SimConfig cfg{PoolState::constant_product("alpha", 1000, "beta", 2000, FeeParam(0.997)),
                             sim::PriceProcess::gbm(2.0, 0.0, 0.02, ticks, 42),
                             {3, 0.001, 0.02},
                             ticks,
                             42,
                             {}};
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_simulation(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulation)->Arg(250)->Arg(2500);

BENCHMARK_MAIN();
