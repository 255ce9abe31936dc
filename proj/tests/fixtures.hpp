#pragma once

#include "ruinlab/montecarlo.hpp"

#include <cmath>

namespace ruinlab::test {

// Numerical-example parameter set: c = 65, lambda = 1, mean claim 50,
// r = 8.4e-4, mu = 1e-3, sigma^2 = 1e-3, alpha = 0.2, T = 1.
inline Market base_market() { return Market::from_variance(8.4e-4, 1e-3, 1e-3); }
inline Utility base_utility() { return Utility{0.2, 0.0, 1.0}; }
inline InsuranceModel base_model(double x0 = 100.0, ClaimDistribution claims = ClaimDistribution::exponential(50.0))
{
    return InsuranceModel{x0, 65.0, 1.0, claims};
}
inline Scenario base_scenario(double x0 = 100.0, std::size_t n_steps = 10'000,
                               ClaimDistribution claims = ClaimDistribution::exponential(50.0))
{
    return Scenario{base_model(x0, claims), base_market(), base_utility(), SimGrid{n_steps}};
}

// Surplus without claims or investment: x e^{rt} + (c/r)(e^{rt} - 1).
inline double deterministic_surplus(double x, double c, double r, double t)
{
    return x * std::exp(r * t) + c / r * std::expm1(r * t);
}

}  // namespace ruinlab::test
