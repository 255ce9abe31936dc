#pragma once

#include "ruinlab/model.hpp"
#include "ruinlab/rng.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ruinlab {

/// Uniform grid of n_steps intervals on [0, T]; arrivals are merged in.
struct SimGrid {
    std::size_t n_steps;

    void validate() const;
    double step(double T) const noexcept { return T / static_cast<double>(n_steps); }

    /// Time of grid point k, computed as T * k / n so grid points land exactly on
    /// simple fractions of T.
    double time_at(double T, std::size_t k) const noexcept
    {
        return T * static_cast<double>(k) / static_cast<double>(n_steps);
    }
};

struct PathOutcome {
    bool ruined = false;
    std::optional<double> ruin_time;
    double terminal_surplus = 0.0;
    double accumulated_utility = 0.0;
    std::size_t n_claims = 0;
    /// False when the surplus left the representable range; such paths must
    /// be reported, never averaged in.
    bool valid = true;
};

/// Portion of the grid to simulate: steps [start_step, end_step] starting from x_start.
struct PathSegment {
    std::size_t start_step;
    std::size_t end_step;
    double x_start;
};

/// Poisson arrival times in (0, T), from cumulative Exponential(lambda) gaps.
std::vector<double> draw_arrivals(double lambda, double T, const RngStream& stream);

/// Arrival times in (t0, t1).
std::vector<double> draw_arrivals(double lambda, double t0, double t1, const RngStream& stream);

/**
 * One Euler path of
 *
 *   dX = [c + mu theta X + r (1 - theta) X] dt + sigma theta X dW - dQ
 *
 * on [0, T]. Grid points and exact claim arrivals are merged and each gap
 * delta is one Euler step with a N(0, delta) increment. Ruin is checked at
 * every event time; after ruin the surplus reads 0 and the utility sum
 * (left-endpoint rectangles of phi) stops.
 */
PathOutcome simulate_path(const InsuranceModel& model, const Market& market, const Utility& utility,
                          const Strategy& strategy, const SimGrid& grid, const RngStream& stream);

/// Same scheme restricted to a grid-aligned sub-interval; utility is
/// accumulated over that interval only and uses absolute time.
PathOutcome simulate_segment(const InsuranceModel& model, const Market& market, const Utility& utility,
                             const Strategy& strategy, const SimGrid& grid, const PathSegment& segment,
                             const RngStream& stream);

}  // namespace ruinlab
