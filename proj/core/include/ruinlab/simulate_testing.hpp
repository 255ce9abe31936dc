#pragma once

// Test hook: drive the simulator with a fixed claim schedule instead of
// Poisson arrivals. Not part of the installed interface's stable surface.

#include "ruinlab/simulate.hpp"

#include <span>

namespace ruinlab::testing {

struct ClaimEvent {
    double time;
    double amount;
};

/// Events must be sorted by time and lie in (0, T]. Brownian increments still
/// come from the stream's diffusion substream.
PathOutcome simulate_path_with_schedule(const InsuranceModel& model, const Market& market, const Utility& utility,
                                        const Strategy& strategy, const SimGrid& grid,
                                        std::span<const ClaimEvent> schedule, const RngStream& stream);

}  // namespace ruinlab::testing
