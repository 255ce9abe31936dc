#pragma once

#include "ruinlab/model.hpp"
#include "ruinlab/simulate.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ruinlab {

/// Everything a path needs except the strategy and the stream.
struct Scenario {
    InsuranceModel model;
    Market market;
    Utility utility;
    SimGrid grid;

    void validate() const;
};

/// Worker threads for path-level parallelism. Results never depend on it.
struct Execution {
    unsigned workers = 1;
};

struct RuinEstimate {
    double p_hat = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_ruined = 0;
    /// Wald standard error sqrt(p(1-p)/N).
    double std_err = 0.0;
    /// Wilson score 95% interval.
    double ci95_low = 0.0;
    double ci95_high = 1.0;
};

struct ValueEstimate {
    double v_hat = 0.0;
    std::size_t n_paths = 0;
    double std_err = 0.0;
};

/// Wilson score interval for k successes out of n at normal quantile z.
struct Interval {
    double low;
    double high;
};
Interval wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054);

/**
 * Fraction of ruined paths over streams (master_seed, 0..n_paths-1).
 * Throws NumericalError naming the first invalid path, if any.
 */
RuinEstimate estimate_ruin(const Scenario& scenario, const Strategy& strategy, std::size_t n_paths,
                           std::uint64_t master_seed, Execution exec = {});

/// Sample mean and standard error of the accumulated utility.
ValueEstimate estimate_value(const Scenario& scenario, const Strategy& strategy, std::size_t n_paths,
                             std::uint64_t master_seed, Execution exec = {});

struct SweepCell {
    double x0;
    ClaimDistribution claims;
    std::size_t strategy_index;
    RuinEstimate estimate;
};

/**
 * Ruin estimates for every (claim law, x0, strategy) combination. Every cell
 * uses the same master seed, so strategies at a fixed x0 (and x0 values for
 * a fixed strategy) are coupled through common random numbers. Cells are
 * ordered by claim law, then x0, then strategy.
 */
std::vector<SweepCell> sweep_table(const Scenario& scenario_template, const std::vector<double>& x_values,
                                   const std::vector<ClaimDistribution>& claim_laws,
                                   const std::vector<Strategy>& strategies, std::size_t n_paths,
                                   std::uint64_t master_seed, Execution exec = {});

struct DppOptions {
    /// Intermediate time, must sit on the grid with 0 < h < T.
    double h = 0.1;
    std::vector<double> candidates;
    std::size_t n_outer = 2000;
    std::size_t n_inner = 200;
    /// Paths for the full-horizon value estimates; 0 picks n_outer * n_inner / 10.
    std::size_t n_value = 0;
    std::size_t max_nested_paths = 20'000'000;
};

struct DppResult {
    double gap = 0.0;
    double std_err = 0.0;
    double best_fraction = 0.0;
    double value_hat = 0.0;
    double value_std_err = 0.0;
    /// Per candidate: E[int_0^{h^tau} phi ds + V_{T-h}(X_h)] and its standard error.
    std::vector<double> continuation;
    std::vector<double> continuation_std_err;

    bool passes() const noexcept { return gap >= -3.0 * std_err; }
};

/**
 * Statistical check of the dynamic programming principle over a finite set
 * of constant fractions:
 *
 *   G = V(x) - max_theta E[ int_0^{h ^ tau} phi ds + V_{T-h}(X_h) ]
 *
 * V(x) is the Monte Carlo value of the best candidate on [0, T]; V_{T-h} is a
 * nested estimate (n_inner paths from each outer state) under that same
 * candidate. G >= 0 up to sampling and discretisation error.
 */
DppResult dpp_consistency(const Scenario& scenario, const DppOptions& options, std::uint64_t master_seed,
                          Execution exec = {});

}  // namespace ruinlab
