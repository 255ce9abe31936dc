#pragma once

#include "ruinlab/model.hpp"

#include <span>

namespace ruinlab {

/// Unclamped Merton ratio (mu - r) / (sigma^2 alpha); 0 when mu <= r.
double merton_fraction(const Market& market, double alpha);

/// min(merton_fraction, 1).
double merton_fraction_clamped(const Market& market, double alpha);

/**
 * K(x) = lambda / x^(1-a) * E[x^(1-a) - (x - U)^(1-a)]
 *        - c (1-a) / x - (r + (mu - r) theta*) (1-a)
 *
 * The expectation treats (x - U)^(1-a) as 0 on {U > x}: a claim larger than
 * the surplus ruins the insurer and the value there is 0.
 */
double k_of_x(double c, double lambda, const ClaimDistribution& claims, const Market& market, double alpha,
              double theta_star, double x);

double k_of_x(const InsuranceModel& model, const Market& market, const Utility& utility, double theta_star,
              double x);

/**
 * Limit of K(x) as x -> infinity for claims with finite mean.
 *
 * 1 - (1 - U/x)^(1-a) -> 0 for every fixed U and is dominated by U/x, so the
 * claim term vanishes and only -(1-a)(r + (mu - r) theta*) remains. The
 * approach is O(1/x).
 */
double k_limit(const Market& market, double alpha, double theta_star);

/**
 * f(t) = e^{-kappa t} [ (1 - e^{-(R + kappa alpha)(T - t)}) / (R + kappa alpha) ]^{1/alpha}
 *
 * z = f^alpha solves z' - R z = -e^{-kappa alpha t} with z(T) = 0. The
 * bracket is evaluated with expm1 and falls back to (T - t) when
 * R + kappa alpha == 0, which is its limit.
 */
double f_profile(double R, const Utility& utility, double t);

/// z(t) = f_profile(t)^alpha, computed directly (no pow round trip).
double z_profile(double R, const Utility& utility, double t);

struct KRange {
    double min;
    double max;
};

/// min / max of K over the given surplus grid (entries must be > 0).
KRange k_range(const InsuranceModel& model, const Market& market, const Utility& utility, double theta_star,
               std::span<const double> xs);

/**
 * Separable candidate V(t, x) = f^alpha(t) x^(1-alpha) with K frozen at a
 * reference surplus x_ref (K depends on x, the separation does not).
 */
class HjbSolution {
public:
    HjbSolution(const InsuranceModel& model, const Market& market, const Utility& utility, double x_ref);

    double theta_star() const noexcept { return theta_star_; }
    double x_ref() const noexcept { return x_ref_; }
    double k_ref() const noexcept { return k_ref_; }
    double R() const noexcept { return R_; }
    const Utility& utility() const noexcept { return utility_; }
    const Market& market() const noexcept { return market_; }

    double f(double t) const { return f_profile(R_, utility_, t); }

    /// V(t, x) = f^alpha(t) x^(1-alpha). Exactly 0 at t = T and at x = 0.
    double value(double t, double x) const;
    double value_dx(double t, double x) const;
    double value_dxx(double t, double x) const;

private:
    Market market_;
    Utility utility_;
    double theta_star_;
    double x_ref_;
    double k_ref_;
    double R_;
};

/// Free-function form of HjbSolution::value.
inline double value_closed_form(const HjbSolution& solution, double t, double x) { return solution.value(t, x); }

}  // namespace ruinlab
