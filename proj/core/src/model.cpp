#include "ruinlab/model.hpp"

#include "ruinlab/error.hpp"
#include "ruinlab/hjb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace ruinlab {
namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void InsuranceModel::validate() const
{
    if (!(x0 >= 0.0) || !finite(x0)) throw DomainError("model.x0 must be finite and >= 0");
    if (!(c > 0.0) || !finite(c)) throw DomainError("model.c must be finite and > 0");
    if (!(lambda > 0.0) || !finite(lambda)) throw DomainError("model.lambda must be finite and > 0");
    if (!net_profit_holds(c, lambda, claims)) {
        throw DomainError("model.c: net profit condition c / lambda > E[U] fails for " + claims.describe());
    }
}

Market Market::from_variance(double r, double mu, double sigma2)
{
    if (!(sigma2 > 0.0) || !finite(sigma2)) {
        throw DomainError("market.sigma2 must be finite and > 0");
    }
    return Market{r, mu, std::sqrt(sigma2)};
}

void Market::validate() const
{
    if (!(r >= 0.0) || !finite(r)) throw DomainError("market.r must be finite and >= 0");
    if (!finite(mu)) throw DomainError("market.mu must be finite");
    if (!(sigma > 0.0) || !finite(sigma)) throw DomainError("market.sigma2 must be finite and > 0");
}

std::optional<std::string> Market::warning() const
{
    if (mu <= r) {
        return std::string("market.mu <= market.r: the optimal risky fraction is 0");
    }
    return std::nullopt;
}

void Utility::validate() const
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("utility.alpha must lie in (0, 1)");
    if (!finite(kappa)) throw DomainError("utility.kappa must be finite");
    if (!(T > 0.0) || !finite(T)) throw DomainError("utility.T must be finite and > 0");
}

double Utility::operator()(double t, double x) const noexcept
{
    if (x <= 0.0) {
        return 0.0;
    }
    const double discount = kappa == 0.0 ? 1.0 : std::exp(-kappa * alpha * t);
    return std::pow(x, 1.0 - alpha) * discount;
}

Strategy Strategy::constant(double theta)
{
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw DomainError("strategy fraction must lie in [0, 1]");
    }
    return Strategy{ConstantFraction{theta}};
}

Strategy Strategy::merton(const Market& market, const Utility& utility)
{
    return Strategy{MertonClamped{merton_fraction_clamped(market, utility.alpha)}};
}

double Strategy::evaluate(double /*t*/, double /*x*/) const noexcept
{
    if (const auto* f = std::get_if<ConstantFraction>(&rule_)) return f->theta;
    if (const auto* m = std::get_if<MertonClamped>(&rule_)) return m->theta;
    return 0.0;
}

std::string Strategy::label() const
{
    if (std::holds_alternative<NoInvestment>(rule_)) return "no_invest";
    if (std::holds_alternative<MertonClamped>(rule_)) return "merton";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, std::get<ConstantFraction>(rule_).theta);
    return "fraction:" + std::string(buf, res.ptr);
}

}  // namespace ruinlab
