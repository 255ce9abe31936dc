#pragma once

#include "ruinlab/claims.hpp"
#include "ruinlab/montecarlo.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ruinlab::cli {

/// Malformed or invalid configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RuinSection {
    std::string strategy = "no_invest";
};

struct TableSection {
    std::vector<double> x_values;
    /// Empty means "the model's claim law".
    std::vector<ClaimDistribution> distributions;
};

struct ValueSection {
    std::vector<double> x_values;
    std::vector<std::string> strategies{"no_invest", "merton"};
    bool closed_form = true;
};

struct HjbSection {
    std::optional<double> x_ref;
    std::vector<double> k_grid;
};

/**
 * Parsed run configuration. Grammar (UTF-8, '\n' line endings):
 *
 *   # comment
 *   [section]
 *   key = value
 *
 * Lists are comma separated; claim-law lists are ';' separated because the
 * laws themselves carry commas, e.g. `pareto(25, 2)`.
 */
struct RunConfig {
    // [model]
    double x0 = 0.0;
    std::optional<double> c;
    std::optional<double> rho;
    double lambda = 0.0;
    std::optional<ClaimDistribution> claims;
    // [market]
    double r = 0.0;
    double mu = 0.0;
    double sigma2 = 0.0;
    // [utility]
    double alpha = 0.0;
    double kappa = 0.0;
    double T = 0.0;
    // [sim]
    std::size_t n_steps = 10'000;
    std::size_t n_paths = 10'000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;

    RuinSection ruin;
    TableSection table;
    ValueSection value;
    HjbSection hjb;
    DppOptions dpp;

    /// c as given, or (1 + rho) lambda E[U] when the loading is given.
    double premium() const;

    InsuranceModel model() const;
    Market market() const;
    Utility utility() const;
    SimGrid grid() const { return SimGrid{n_steps}; }
    Scenario scenario() const;

    /// Re-checks every module invariant; throws ConfigError naming the field.
    void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(echo_config(c)) reproduces c exactly.
std::string echo_config(const RunConfig& config);

/// "no_invest", "merton" or "fraction:<theta>".
Strategy parse_strategy(std::string_view text, const Market& market, const Utility& utility);

/// "exponential(mean)", "pareto(scale, shape)" or "weibull(shape, scale)".
ClaimDistribution parse_claim_law(std::string_view text);

}  // namespace ruinlab::cli
