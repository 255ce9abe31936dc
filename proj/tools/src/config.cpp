#include "ruinlab/cli/config.hpp"

#include "ruinlab/cli/csv.hpp"
#include "ruinlab/error.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ruinlab::cli {
namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    if (trim(s).empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ConfigError(field + ": " + what);
}

double to_double(const std::string& field, std::string_view v)
{
    double d = 0.0;
    if (!parse_double(v, d)) fail(field, "expected a number, got '" + std::string(v) + "'");
    return d;
}

template <class Int>
Int to_uint(const std::string& field, std::string_view v)
{
    Int out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || v.empty()) {
        fail(field, "expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

bool to_bool(const std::string& field, std::string_view v)
{
    if (v == "true") return true;
    if (v == "false") return false;
    fail(field, "expected true or false");
}

std::vector<double> to_doubles(const std::string& field, std::string_view v)
{
    std::vector<double> out;
    for (auto item : split(v, ',')) out.push_back(to_double(field, item));
    return out;
}

std::string join_doubles(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s;
}

std::string claim_law_text(const ClaimDistribution& d)
{
    if (const auto* e = std::get_if<Exponential>(&d.law())) return "exponential(" + format_double(e->mean) + ")";
    if (const auto* p = std::get_if<Pareto>(&d.law())) {
        return "pareto(" + format_double(p->scale) + ", " + format_double(p->shape) + ")";
    }
    const auto& w = std::get<Weibull>(d.law());
    return "weibull(" + format_double(w.shape) + ", " + format_double(w.scale) + ")";
}

using Setter = std::function<void(RunConfig&, const std::string& field, std::string_view value)>;

const std::map<std::string, std::map<std::string, Setter>>& schema()
{
    static const std::map<std::string, std::map<std::string, Setter>> s{
        {"model",
         {
             {"x0", [](RunConfig& c, const std::string& f, std::string_view v) { c.x0 = to_double(f, v); }},
             {"c", [](RunConfig& c, const std::string& f, std::string_view v) { c.c = to_double(f, v); }},
             {"rho", [](RunConfig& c, const std::string& f, std::string_view v) { c.rho = to_double(f, v); }},
             {"lambda", [](RunConfig& c, const std::string& f, std::string_view v) { c.lambda = to_double(f, v); }},
             {"claims",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  try {
                      c.claims = parse_claim_law(v);
                  } catch (const std::exception& e) {
                      fail(f, e.what());
                  }
              }},
         }},
        {"market",
         {
             {"r", [](RunConfig& c, const std::string& f, std::string_view v) { c.r = to_double(f, v); }},
             {"mu", [](RunConfig& c, const std::string& f, std::string_view v) { c.mu = to_double(f, v); }},
             {"sigma2", [](RunConfig& c, const std::string& f, std::string_view v) { c.sigma2 = to_double(f, v); }},
         }},
        {"utility",
         {
             {"alpha", [](RunConfig& c, const std::string& f, std::string_view v) { c.alpha = to_double(f, v); }},
             {"kappa", [](RunConfig& c, const std::string& f, std::string_view v) { c.kappa = to_double(f, v); }},
             {"T", [](RunConfig& c, const std::string& f, std::string_view v) { c.T = to_double(f, v); }},
         }},
        {"sim",
         {
             {"n_steps",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.n_steps = to_uint<std::size_t>(f, v); }},
             {"n_paths",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.n_paths = to_uint<std::size_t>(f, v); }},
             {"master_seed",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.master_seed = to_uint<std::uint64_t>(f, v);
              }},
             {"workers",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.workers = to_uint<unsigned>(f, v); }},
         }},
        {"ruin",
         {
             {"strategy", [](RunConfig& c, const std::string&, std::string_view v) { c.ruin.strategy = v; }},
         }},
        {"table",
         {
             {"x_values",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.table.x_values = to_doubles(f, v); }},
             {"distributions",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.table.distributions.clear();
                  for (auto item : split(v, ';')) {
                      try {
                          c.table.distributions.push_back(parse_claim_law(item));
                      } catch (const std::exception& e) {
                          fail(f, e.what());
                      }
                  }
              }},
         }},
        {"value",
         {
             {"x_values",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.value.x_values = to_doubles(f, v); }},
             {"strategies",
              [](RunConfig& c, const std::string&, std::string_view v) {
                  c.value.strategies.clear();
                  for (auto item : split(v, ',')) c.value.strategies.emplace_back(item);
              }},
             {"closed_form",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.value.closed_form = to_bool(f, v); }},
         }},
        {"hjb",
         {
             {"x_ref", [](RunConfig& c, const std::string& f, std::string_view v) { c.hjb.x_ref = to_double(f, v); }},
             {"k_grid",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.hjb.k_grid = to_doubles(f, v); }},
         }},
        {"dpp",
         {
             {"h", [](RunConfig& c, const std::string& f, std::string_view v) { c.dpp.h = to_double(f, v); }},
             {"candidates",
              [](RunConfig& c, const std::string& f, std::string_view v) { c.dpp.candidates = to_doubles(f, v); }},
             {"n_outer",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.dpp.n_outer = to_uint<std::size_t>(f, v);
              }},
             {"n_inner",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.dpp.n_inner = to_uint<std::size_t>(f, v);
              }},
             {"n_value",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.dpp.n_value = to_uint<std::size_t>(f, v);
              }},
             {"max_nested_paths",
              [](RunConfig& c, const std::string& f, std::string_view v) {
                  c.dpp.max_nested_paths = to_uint<std::size_t>(f, v);
              }},
         }},
    };
    return s;
}

}  // namespace

ClaimDistribution parse_claim_law(std::string_view text)
{
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')') {
        throw ConfigError("claim law must look like name(p1[, p2]), got '" + std::string(text) + "'");
    }
    const auto name = trim(text.substr(0, open));
    const auto args = split(text.substr(open + 1, text.size() - open - 2), ',');
    std::vector<double> p;
    for (auto a : args) p.push_back(to_double(std::string(name), a));
    try {
        if (name == "exponential" && p.size() == 1) return ClaimDistribution::exponential(p[0]);
        if (name == "pareto" && p.size() == 2) return ClaimDistribution::pareto(p[0], p[1]);
        if (name == "weibull" && p.size() == 2) return ClaimDistribution::weibull(p[0], p[1]);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown claim law '" + std::string(text) +
                      "' (expected exponential(mean), pareto(scale, shape) or weibull(shape, scale))");
}

Strategy parse_strategy(std::string_view text, const Market& market, const Utility& utility)
{
    text = trim(text);
    if (text == "no_invest") return Strategy::none();
    if (text == "merton") return Strategy::merton(market, utility);
    constexpr std::string_view prefix = "fraction:";
    if (text.starts_with(prefix)) {
        double theta = 0.0;
        if (parse_double(text.substr(prefix.size()), theta)) {
            try {
                return Strategy::constant(theta);
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    throw ConfigError("unknown strategy '" + std::string(text) + "' (expected no_invest, merton or fraction:<theta>)");
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    const auto& sch = schema();
    std::string section;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!sch.contains(section)) throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
        if (section.empty()) throw ConfigError(where + ": key outside of any [section]");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        const std::string field = section + "." + key;
        const auto& keys = sch.at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError(field + ": unknown key");
        if (!seen.insert(field).second) throw ConfigError(field + ": given more than once");
        it->second(cfg, field, value);
    }
    for (const char* req : {"model.x0", "model.lambda", "model.claims", "market.r", "market.mu", "market.sigma2",
                            "utility.alpha", "utility.T"}) {
        if (!seen.contains(req)) throw ConfigError(std::string(req) + ": missing");
    }
    if (cfg.c.has_value() == cfg.rho.has_value()) {
        throw ConfigError("model.c / model.rho: exactly one of them must be given");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

double RunConfig::premium() const
{
    if (c) return *c;
    if (!rho || !claims) throw ConfigError("model.c / model.rho: exactly one of them must be given");
    try {
        return premium_from_loading(lambda, claims->mean(), *rho);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("model.rho: ") + e.what());
    }
}

InsuranceModel RunConfig::model() const
{
    if (!claims) throw ConfigError("model.claims: missing");
    return InsuranceModel{x0, premium(), lambda, *claims};
}

Market RunConfig::market() const
{
    try {
        return Market::from_variance(r, mu, sigma2);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

Utility RunConfig::utility() const { return Utility{alpha, kappa, T}; }

Scenario RunConfig::scenario() const { return Scenario{model(), market(), utility(), grid()}; }

void RunConfig::validate() const
{
    try {
        const auto s = scenario();
        s.validate();
        if (n_paths < 1) throw DomainError("sim.n_paths must be >= 1");
        if (workers < 1) throw DomainError("sim.workers must be >= 1");
        parse_strategy(ruin.strategy, s.market, s.utility);
        for (const auto& st : value.strategies) parse_strategy(st, s.market, s.utility);
        for (double x : table.x_values) {
            if (!(x >= 0.0)) throw DomainError("table.x_values must be >= 0");
        }
        for (double x : value.x_values) {
            if (!(x >= 0.0)) throw DomainError("value.x_values must be >= 0");
        }
        for (const auto& d : table.distributions) {
            if (!net_profit_holds(premium(), lambda, d)) {
                throw DomainError("table.distributions: net profit condition fails for " + d.describe());
            }
        }
        for (double theta : dpp.candidates) {
            if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("dpp.candidates must lie in [0, 1]");
        }
        if (hjb.x_ref && !(*hjb.x_ref > 0.0)) throw DomainError("hjb.x_ref must be > 0");
        for (double x : hjb.k_grid) {
            if (!(x > 0.0)) throw DomainError("hjb.k_grid entries must be > 0");
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::string echo_config(const RunConfig& cfg)
{
    std::ostringstream os;
    os << "[model]\n";
    os << "x0 = " << format_double(cfg.x0) << "\n";
    if (cfg.c) os << "c = " << format_double(*cfg.c) << "\n";
    if (cfg.rho) {
        os << "rho = " << format_double(*cfg.rho) << "\n";
        os << "# c = " << format_double(cfg.premium()) << " (from rho)\n";
    }
    os << "lambda = " << format_double(cfg.lambda) << "\n";
    os << "claims = " << claim_law_text(*cfg.claims) << "\n";
    os << "\n[market]\n";
    os << "r = " << format_double(cfg.r) << "\n";
    os << "mu = " << format_double(cfg.mu) << "\n";
    os << "sigma2 = " << format_double(cfg.sigma2) << "\n";
    os << "\n[utility]\n";
    os << "alpha = " << format_double(cfg.alpha) << "\n";
    os << "kappa = " << format_double(cfg.kappa) << "\n";
    os << "T = " << format_double(cfg.T) << "\n";
    os << "\n[sim]\n";
    os << "n_steps = " << cfg.n_steps << "\n";
    os << "n_paths = " << cfg.n_paths << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "workers = " << cfg.workers << "\n";
    os << "\n[ruin]\n";
    os << "strategy = " << cfg.ruin.strategy << "\n";
    os << "\n[table]\n";
    os << "x_values = " << join_doubles(cfg.table.x_values) << "\n";
    os << "distributions = ";
    for (std::size_t i = 0; i < cfg.table.distributions.size(); ++i) {
        if (i) os << "; ";
        os << claim_law_text(cfg.table.distributions[i]);
    }
    os << "\n";
    os << "\n[value]\n";
    os << "x_values = " << join_doubles(cfg.value.x_values) << "\n";
    os << "strategies = ";
    for (std::size_t i = 0; i < cfg.value.strategies.size(); ++i) {
        if (i) os << ", ";
        os << cfg.value.strategies[i];
    }
    os << "\n";
    os << "closed_form = " << (cfg.value.closed_form ? "true" : "false") << "\n";
    os << "\n[hjb]\n";
    if (cfg.hjb.x_ref) os << "x_ref = " << format_double(*cfg.hjb.x_ref) << "\n";
    os << "k_grid = " << join_doubles(cfg.hjb.k_grid) << "\n";
    os << "\n[dpp]\n";
    os << "h = " << format_double(cfg.dpp.h) << "\n";
    os << "candidates = " << join_doubles(cfg.dpp.candidates) << "\n";
    os << "n_outer = " << cfg.dpp.n_outer << "\n";
    os << "n_inner = " << cfg.dpp.n_inner << "\n";
    os << "n_value = " << cfg.dpp.n_value << "\n";
    os << "max_nested_paths = " << cfg.dpp.max_nested_paths << "\n";
    return os.str();
}

}  // namespace ruinlab::cli
