#pragma once

#include "ruinlab/claims.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ruinlab {

/// Cramer-Lundberg surplus: X_t = x0 + c t - (compound Poisson claims).
struct InsuranceModel {
    double x0;
    double c;
    double lambda;
    ClaimDistribution claims;

    /// Throws DomainError (naming the field) when a parameter is out of range
    /// or the net profit condition c / lambda > E[U] fails.
    void validate() const;
};

/// Black-Scholes market: riskless rate r, risky drift mu, volatility sigma.
struct Market {
    double r;
    double mu;
    double sigma;

    static Market from_variance(double r, double mu, double sigma2);

    double sigma2() const noexcept { return sigma * sigma; }

    void validate() const;

    /// Non-fatal diagnostic, set when mu <= r (the optimal fraction is then 0).
    std::optional<std::string> warning() const;
};

/// phi(t, x) = x^(1 - alpha) * exp(-kappa * alpha * t) on the horizon [0, T].
struct Utility {
    double alpha;
    double kappa;
    double T;

    void validate() const;

    double operator()(double t, double x) const noexcept;
};

struct NoInvestment {};

struct ConstantFraction {
    double theta;
};

/// Merton ratio (mu - r) / (sigma^2 alpha) clamped into [0, 1], fixed at construction.
struct MertonClamped {
    double theta;
};

/**
 * Investment rule returning the fraction of surplus held in the risky asset.
 * Every alternative is constant in (t, x); the (t, x) signature is kept so
 * state-dependent rules can be added without touching the simulator.
 */
class Strategy {
public:
    using Rule = std::variant<NoInvestment, ConstantFraction, MertonClamped>;

    static Strategy none() { return Strategy{NoInvestment{}}; }
    static Strategy constant(double theta);
    static Strategy merton(const Market& market, const Utility& utility);

    double evaluate(double t, double x) const noexcept;

    /// True when evaluate() never depends on (t, x).
    bool is_constant() const noexcept { return true; }

    const Rule& rule() const noexcept { return rule_; }

    /// Short stable label used in CSV output: "no_invest", "merton", "fraction:0.4".
    std::string label() const;

private:
    explicit Strategy(Rule rule) : rule_(rule) {}
    Rule rule_;
};

}  // namespace ruinlab
