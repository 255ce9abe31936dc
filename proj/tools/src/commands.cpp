#include "ruinlab/cli/commands.hpp"

#include "ruinlab/cli/csv.hpp"
#include "ruinlab/error.hpp"
#include "ruinlab/hjb.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace ruinlab::cli {
namespace {

Execution exec_of(const RunConfig& c) { return Execution{c.workers}; }

std::string law_token(const ClaimDistribution& d)
{
    if (const auto* e = std::get_if<Exponential>(&d.law())) return "exponential:" + format_double(e->mean);
    if (const auto* p = std::get_if<Pareto>(&d.law())) {
        return "pareto:" + format_double(p->scale) + ":" + format_double(p->shape);
    }
    const auto& w = std::get<Weibull>(d.law());
    return "weibull:" + format_double(w.shape) + ":" + format_double(w.scale);
}

double reference_surplus(const RunConfig& c)
{
    const double x_ref = c.hjb.x_ref.value_or(c.x0);
    if (!(x_ref > 0.0)) {
        throw ConfigError("hjb.x_ref: must be > 0 (defaults to model.x0, which is 0 here)");
    }
    return x_ref;
}

}  // namespace

void cmd_merton(const RunConfig& config, std::ostream& out)
{
    const auto s = config.scenario();
    const double theta = merton_fraction(s.market, s.utility.alpha);
    const HjbSolution sol(s.model, s.market, s.utility, reference_surplus(config));
    out << "theta_star=" << format_fixed(theta, 6) << "\n";
    out << "theta_clamped=" << format_fixed(merton_fraction_clamped(s.market, s.utility.alpha), 6) << "\n";
    out << "c=" << format_double(s.model.c) << "\n";
    out << "x_ref=" << format_double(sol.x_ref()) << "\n";
    out << "K_ref=" << format_double(sol.k_ref()) << "\n";
    out << "R=" << format_double(sol.R()) << "\n";
    out << "f0=" << format_double(sol.f(0.0)) << "\n";
    out << "K_limit=" << format_double(k_limit(s.market, s.utility.alpha, theta)) << "\n";
    if (!config.hjb.k_grid.empty()) {
        const auto range = k_range(s.model, s.market, s.utility, theta, config.hjb.k_grid);
        out << "K_grid_min=" << format_double(range.min) << "\n";
        out << "K_grid_max=" << format_double(range.max) << "\n";
    }
}

void cmd_ruin(const RunConfig& config, std::ostream& out)
{
    const auto s = config.scenario();
    const auto strategy = parse_strategy(config.ruin.strategy, s.market, s.utility);
    const auto est = estimate_ruin(s, strategy, config.n_paths, config.master_seed, exec_of(config));
    out << "x0,strategy,p_hat,std_err,ci95_low,ci95_high,n_paths,n_steps,seed\n";
    out << join_csv({format_double(s.model.x0), strategy.label(), format_double(est.p_hat),
                     format_double(est.std_err), format_double(est.ci95_low), format_double(est.ci95_high),
                     std::to_string(est.n_paths), std::to_string(config.n_steps),
                     std::to_string(config.master_seed)})
        << "\n";
}

void cmd_table(const RunConfig& config, std::ostream& out)
{
    if (config.table.x_values.empty()) {
        throw ConfigError("table.x_values: must list at least one surplus");
    }
    const auto s = config.scenario();
    std::vector<ClaimDistribution> laws = config.table.distributions;
    if (laws.empty()) laws.push_back(s.model.claims);
    const std::vector<Strategy> strategies{Strategy::none(), Strategy::merton(s.market, s.utility)};
    const auto cells =
        sweep_table(s, config.table.x_values, laws, strategies, config.n_paths, config.master_seed, exec_of(config));

    out << "x,dist,psi_no_invest,se_no_invest,psi_invest,se_invest\n";
    // cells come in (law, x, strategy) order with two strategies per (law, x)
    for (std::size_t i = 0; i + 1 < cells.size(); i += 2) {
        const auto& none = cells[i].estimate;
        const auto& inv = cells[i + 1].estimate;
        out << join_csv({format_double(cells[i].x0), law_token(cells[i].claims), format_double(none.p_hat),
                         format_double(none.std_err), format_double(inv.p_hat), format_double(inv.std_err)})
            << "\n";
    }
}

void cmd_value(const RunConfig& config, std::ostream& out)
{
    const auto base = config.scenario();
    std::vector<double> xs = config.value.x_values;
    if (xs.empty()) xs.push_back(config.x0);
    if (config.value.strategies.empty()) {
        throw ConfigError("value.strategies: must list at least one strategy");
    }
    std::optional<HjbSolution> sol;
    if (config.value.closed_form) {
        sol.emplace(base.model, base.market, base.utility, reference_surplus(config));
    }

    out << "x0,strategy,v_hat,std_err" << (sol ? ",v_closed_form" : "") << "\n";
    for (double x : xs) {
        Scenario s = base;
        s.model.x0 = x;
        for (const auto& name : config.value.strategies) {
            const auto strategy = parse_strategy(name, s.market, s.utility);
            const auto est = estimate_value(s, strategy, config.n_paths, config.master_seed, exec_of(config));
            std::vector<std::string> row{format_double(x), strategy.label(), format_double(est.v_hat),
                                         format_double(est.std_err)};
            if (sol) row.push_back(format_double(sol->value(0.0, x)));
            out << join_csv(row) << "\n";
        }
    }
}

void cmd_dpp(const RunConfig& config, std::ostream& out)
{
    const auto s = config.scenario();
    if (!(config.dpp.h > 0.0 && config.dpp.h < s.utility.T)) {
        throw ConfigError("dpp.h: must lie in (0, utility.T)");
    }
    if (config.dpp.candidates.empty()) {
        throw ConfigError("dpp.candidates: must list at least one fraction");
    }
    DppResult res;
    try {
        res = dpp_consistency(s, config.dpp, config.master_seed, exec_of(config));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    out << "best_fraction=" << format_double(res.best_fraction) << "\n";
    out << "value_hat=" << format_double(res.value_hat) << "\n";
    out << "value_std_err=" << format_double(res.value_std_err) << "\n";
    for (std::size_t k = 0; k < res.continuation.size(); ++k) {
        out << "continuation[" << format_double(config.dpp.candidates[k]) << "]=" << format_double(res.continuation[k])
            << " se=" << format_double(res.continuation_std_err[k]) << "\n";
    }
    out << "G=" << format_double(res.gap) << "\n";
    out << "std_err=" << format_double(res.std_err) << "\n";
    out << (res.passes() ? "PASS" : "FAIL") << "\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ruinlab: surplus-process simulation, ruin probabilities and HJB closed forms"};
    std::string command;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    bool echo = false;
    app.add_option("command", command, "merton | ruin | table | value | dpp")
        ->required()
        ->check(CLI::IsMember({"merton", "ruin", "table", "value", "dpp"}));
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_path, "write output here instead of stdout");
    app.add_option("--seed", seed, "override sim.master_seed");
    app.add_option("--workers", workers, "worker threads (does not change results)")->check(CLI::PositiveNumber);
    app.add_flag("--echo-config", echo, "print the parsed configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    }

    try {
        RunConfig config = load_config(config_path);
        if (seed) config.master_seed = *seed;
        if (workers) config.workers = *workers;
        if (config.rho) {
            err << "note: c = " << format_double(config.premium()) << " from rho = " << format_double(*config.rho)
                << "\n";
        }
        if (auto w = config.market().warning()) err << "warning: " << *w << "\n";

        std::ostringstream buffer;
        if (echo) {
            buffer << echo_config(config);
        } else if (command == "merton") {
            cmd_merton(config, buffer);
        } else if (command == "ruin") {
            cmd_ruin(config, buffer);
        } else if (command == "table") {
            cmd_table(config, buffer);
        } else if (command == "value") {
            cmd_value(config, buffer);
        } else {
            cmd_dpp(config, buffer);
        }

        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot write '" << out_path << "'\n";
                return exit_config;
            }
            file << buffer.str();
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const DomainError& e) {
        err << "precondition error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

}  // namespace ruinlab::cli
