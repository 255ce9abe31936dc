#include "ruinlab/montecarlo.hpp"

#include "ruinlab/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace ruinlab {
namespace {

// Runs fn(i) for i in [0, n). Each index must write only its own output slot;
// that makes results independent of the worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn)
{
    const std::size_t w = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(w);
        for (std::size_t t = 0; t < w; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= n || failed.load()) return;
                    const std::size_t end = std::min(n, begin + chunk);
                    try {
                        for (std::size_t i = begin; i < end; ++i) fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        failed = true;
                        return;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

struct MeanSe {
    double mean;
    double se;
};

// Fixed summation order: index order.
MeanSe mean_and_se(const std::vector<double>& v)
{
    const auto n = static_cast<double>(v.size());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / n;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

[[noreturn]] void invalid_path(std::size_t index, std::uint64_t seed)
{
    std::ostringstream os;
    os << "path " << index << " (seed " << seed << ") left the representable range";
    throw NumericalError(os.str());
}

std::vector<PathOutcome> run_paths(const Scenario& s, const Strategy& strategy, std::size_t n_paths,
                                   std::uint64_t seed, Execution exec)
{
    if (n_paths < 1) {
        throw DomainError("sim.n_paths must be >= 1");
    }
    s.validate();
    std::vector<PathOutcome> outcomes(n_paths);
    parallel_for(n_paths, exec.workers, [&](std::size_t i) {
        outcomes[i] = simulate_path(s.model, s.market, s.utility, strategy, s.grid, RngStream{seed, i});
    });
    for (std::size_t i = 0; i < n_paths; ++i) {
        if (!outcomes[i].valid) invalid_path(i, seed);
    }
    return outcomes;
}

}  // namespace

void Scenario::validate() const
{
    model.validate();
    market.validate();
    utility.validate();
    grid.validate();
}

Interval wilson_interval(std::size_t k, std::size_t n, double z)
{
    if (n == 0 || k > n) {
        throw DomainError("wilson_interval requires 0 <= k <= n, n >= 1");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    Interval iv{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    // rounding can push an end a hair past p when k is 0 or n
    iv.low = std::min(iv.low, p);
    iv.high = std::max(iv.high, p);
    return iv;
}

RuinEstimate estimate_ruin(const Scenario& scenario, const Strategy& strategy, std::size_t n_paths,
                           std::uint64_t master_seed, Execution exec)
{
    const auto outcomes = run_paths(scenario, strategy, n_paths, master_seed, exec);
    RuinEstimate est;
    est.n_paths = n_paths;
    for (const auto& o : outcomes) est.n_ruined += o.ruined ? 1 : 0;
    const double n = static_cast<double>(n_paths);
    est.p_hat = static_cast<double>(est.n_ruined) / n;
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
    const auto iv = wilson_interval(est.n_ruined, n_paths);
    est.ci95_low = iv.low;
    est.ci95_high = iv.high;
    return est;
}

ValueEstimate estimate_value(const Scenario& scenario, const Strategy& strategy, std::size_t n_paths,
                             std::uint64_t master_seed, Execution exec)
{
    const auto outcomes = run_paths(scenario, strategy, n_paths, master_seed, exec);
    std::vector<double> u(n_paths);
    std::transform(outcomes.begin(), outcomes.end(), u.begin(),
                   [](const PathOutcome& o) { return o.accumulated_utility; });
    const auto ms = mean_and_se(u);
    return ValueEstimate{ms.mean, n_paths, ms.se};
}

std::vector<SweepCell> sweep_table(const Scenario& scenario_template, const std::vector<double>& x_values,
                                   const std::vector<ClaimDistribution>& claim_laws,
                                   const std::vector<Strategy>& strategies, std::size_t n_paths,
                                   std::uint64_t master_seed, Execution exec)
{
    if (x_values.empty()) throw DomainError("sweep needs at least one x value");
    if (claim_laws.empty()) throw DomainError("sweep needs at least one claim distribution");
    if (strategies.empty()) throw DomainError("sweep needs at least one strategy");

    std::vector<SweepCell> cells;
    cells.reserve(x_values.size() * claim_laws.size() * strategies.size());
    for (const auto& law : claim_laws) {
        for (double x : x_values) {
            Scenario s = scenario_template;
            s.model.claims = law;
            s.model.x0 = x;
            for (std::size_t k = 0; k < strategies.size(); ++k) {
                cells.push_back(SweepCell{x, law, k, estimate_ruin(s, strategies[k], n_paths, master_seed, exec)});
            }
        }
    }
    return cells;
}

DppResult dpp_consistency(const Scenario& scenario, const DppOptions& options, std::uint64_t master_seed,
                          Execution exec)
{
    scenario.validate();
    const double T = scenario.utility.T;
    const auto& grid = scenario.grid;
    if (options.candidates.empty()) throw DomainError("dpp.candidates must be nonempty");
    if (!(options.h > 0.0 && options.h < T)) throw DomainError("dpp.h must lie in (0, utility.T)");
    const double steps_exact = options.h / grid.step(T);
    const auto h_steps = static_cast<std::size_t>(std::llround(steps_exact));
    if (std::abs(steps_exact - static_cast<double>(h_steps)) > 1e-9 * static_cast<double>(grid.n_steps) ||
        h_steps == 0 || h_steps >= grid.n_steps) {
        throw DomainError("dpp.h must be a multiple of the grid step T / n_steps");
    }
    if (options.n_outer < 2 || options.n_inner < 1) {
        throw DomainError("dpp.n_outer must be >= 2 and dpp.n_inner >= 1");
    }
    if (options.n_outer * options.n_inner > options.max_nested_paths) {
        throw DomainError("dpp.n_outer * dpp.n_inner exceeds dpp.max_nested_paths");
    }
    const std::size_t n_value =
        options.n_value > 0 ? options.n_value : std::max<std::size_t>(2, options.n_outer * options.n_inner / 10);

    std::vector<Strategy> strategies;
    for (double theta : options.candidates) strategies.push_back(Strategy::constant(theta));

    // Disjoint stream families for the three estimation stages.
    const std::uint64_t seed_value = mix64(master_seed ^ 0x76616c7565ULL);
    const std::uint64_t seed_outer = mix64(master_seed ^ 0x6f75746572ULL);
    const std::uint64_t seed_inner = mix64(master_seed ^ 0x696e6e6572ULL);

    DppResult res;
    std::size_t best = 0;
    for (std::size_t k = 0; k < strategies.size(); ++k) {
        const auto v = estimate_value(scenario, strategies[k], n_value, seed_value, exec);
        if (k == 0 || v.v_hat > res.value_hat) {
            best = k;
            res.value_hat = v.v_hat;
            res.value_std_err = v.std_err;
        }
    }
    res.best_fraction = options.candidates[best];
    const Strategy& inner_strategy = strategies[best];

    std::size_t best_cont = 0;
    for (std::size_t k = 0; k < strategies.size(); ++k) {
        std::vector<double> y(options.n_outer);
        std::vector<char> bad(options.n_outer, 0);
        parallel_for(options.n_outer, exec.workers, [&](std::size_t i) {
            const auto head = simulate_segment(scenario.model, scenario.market, scenario.utility, strategies[k],
                                               grid, PathSegment{0, h_steps, scenario.model.x0},
                                               RngStream{seed_outer, i});
            if (!head.valid) {
                bad[i] = 1;
                return;
            }
            double tail = 0.0;
            if (!head.ruined) {
                for (std::size_t j = 0; j < options.n_inner; ++j) {
                    const auto o = simulate_segment(scenario.model, scenario.market, scenario.utility,
                                                    inner_strategy, grid,
                                                    PathSegment{h_steps, grid.n_steps, head.terminal_surplus},
                                                    RngStream{seed_inner, i * options.n_inner + j});
                    if (!o.valid) {
                        bad[i] = 1;
                        return;
                    }
                    tail += o.accumulated_utility;
                }
                tail /= static_cast<double>(options.n_inner);
            }
            y[i] = head.accumulated_utility + tail;
        });
        for (std::size_t i = 0; i < options.n_outer; ++i) {
            if (bad[i]) invalid_path(i, seed_outer);
        }
        const auto ms = mean_and_se(y);
        res.continuation.push_back(ms.mean);
        res.continuation_std_err.push_back(ms.se);
        if (ms.mean > res.continuation[best_cont]) best_cont = k;
    }
    res.gap = res.value_hat - res.continuation[best_cont];
    res.std_err = std::hypot(res.value_std_err, res.continuation_std_err[best_cont]);
    return res;
}

}  // namespace ruinlab
