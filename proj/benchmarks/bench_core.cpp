#include "ruinlab/claims.hpp"
#include "ruinlab/hjb.hpp"
#include "ruinlab/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace ruinlab;

namespace {

const Market market = Market::from_variance(8.4e-4, 1e-3, 1e-3);
const Utility utility{0.2, 0.0, 1.0};

void BM_SimulatePath(benchmark::State& state)
{
    const InsuranceModel model{100.0, 65.0, 1.0, ClaimDistribution::exponential(50.0)};
    const auto strategy = state.range(1) ? Strategy::merton(market, utility) : Strategy::none();
    const SimGrid grid{static_cast<std::size_t>(state.range(0))};
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(model, market, utility, strategy, grid, RngStream{1, i++}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePath)->Args({1000, 0})->Args({1000, 1})->Args({10000, 0})->Args({10000, 1});

void BM_Sample(benchmark::State& state)
{
    const ClaimDistribution laws[] = {ClaimDistribution::exponential(50.0), ClaimDistribution::pareto(25.0, 2.0),
                                      ClaimDistribution::weibull(1.5, 50.0)};
    const auto& d = laws[state.range(0)];
    double u = 0.0;
    for (auto _ : state) {
        u += 0.6180339887498949;
        if (u >= 1.0) u -= 1.0;
        benchmark::DoNotOptimize(d.sample(u > 0.0 ? u : 0.5));
    }
    state.SetLabel(d.describe());
}
BENCHMARK(BM_Sample)->DenseRange(0, 2);

void BM_TruncatedMoment(benchmark::State& state)
{
    const auto d = ClaimDistribution::exponential(50.0);
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(truncated_power_moment(d, x, 0.2));
}
BENCHMARK(BM_TruncatedMoment)->Arg(10)->Arg(100)->Arg(1000)->Arg(100000);

void BM_TruncatedMomentSeries(benchmark::State& state)
{
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(truncated_power_moment_exponential_series(50.0, x, 0.2));
}
BENCHMARK(BM_TruncatedMomentSeries)->Arg(10)->Arg(100)->Arg(1000)->Arg(100000);

void BM_KOfX(benchmark::State& state)
{
    const InsuranceModel model{100.0, 65.0, 1.0, ClaimDistribution::pareto(25.0, 2.0)};
    for (auto _ : state) benchmark::DoNotOptimize(k_of_x(model, market, utility, 0.8, 100.0));
}
BENCHMARK(BM_KOfX);

}  // namespace

BENCHMARK_MAIN();
