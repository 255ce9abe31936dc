#pragma once

#include <string>
#include <variant>

namespace ruinlab {

struct Exponential {
    double mean;
};

/// Type-I Pareto on [scale, inf).
struct Pareto {
    double scale;
    double shape;
};

struct Weibull {
    double shape;
    double scale;
};

/**
 * Claim-severity law. Immutable; parameters are validated on construction
 * and every member is safe to call concurrently.
 */
class ClaimDistribution {
public:
    using Law = std::variant<Exponential, Pareto, Weibull>;

    explicit ClaimDistribution(Law law);

    static ClaimDistribution exponential(double mean) { return ClaimDistribution{Exponential{mean}}; }
    static ClaimDistribution pareto(double scale, double shape) { return ClaimDistribution{Pareto{scale, shape}}; }
    static ClaimDistribution weibull(double shape, double scale) { return ClaimDistribution{Weibull{shape, scale}}; }

    const Law& law() const noexcept { return law_; }

    /// Inverse CDF. Throws DomainError unless 0 < u < 1.
    double sample(double u) const;

    double cdf(double x) const noexcept;
    double pdf(double x) const noexcept;

    /// Throws UndefinedMeanError for Pareto with shape <= 1.
    double mean() const;

    /// Lower end of the support's closure (scale for Pareto, else 0).
    double support_min() const noexcept;

    /// Family name: "exponential", "pareto" or "weibull".
    std::string family() const;

    /// Canonical text form, e.g. "pareto(25, 2)". Parsed back by the CLI.
    std::string describe() const;

    friend bool operator==(const ClaimDistribution& a, const ClaimDistribution& b);

private:
    Law law_;
};

/// c = (1 + rho) * lambda * mean_claim.
double premium_from_loading(double lambda, double mean_claim, double rho);

/// c / lambda > E[U]. Propagates UndefinedMeanError.
bool net_profit_holds(double c, double lambda, const ClaimDistribution& dist);

/**
 * E[(x - U)^(1 - alpha) ; U <= x] by adaptive Gauss-Kronrod quadrature.
 *
 * The range is split at the midpoint of the support below x; the piece next
 * to u = x is integrated in the variable s = sqrt(x - u) so the integrand
 * stays smooth where (x - u)^(1 - alpha) has an unbounded derivative.
 * Throws NumericalError when the error estimate exceeds 1e-10 absolute
 * (with a 1e-12 relative floor for large moments).
 */
double truncated_power_moment(const ClaimDistribution& dist, double x, double alpha);

/**
 * Closed form of the truncated moment for exponential claims with rate
 * theta = 1/mean:
 *
 *   theta * x^(2 - alpha) / (2 - alpha) * 1F1(1; 3 - alpha; -theta x)
 *
 * evaluated through Kummer's transformation so every series term is positive.
 */
double truncated_power_moment_exponential_series(double mean, double x, double alpha);

/// 1F1(1; b; -z) for z >= 0, b > 1.
double kummer_1f1_unit_a(double b, double z);

}  // namespace ruinlab
