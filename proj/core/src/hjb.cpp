#include "ruinlab/hjb.hpp"

#include "ruinlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ruinlab {
namespace {

void require_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("utility.alpha must lie in (0, 1)");
    }
}

void require_time(const Utility& u, double t)
{
    if (!(t >= 0.0 && t <= u.T)) {
        throw DomainError("t must lie in [0, utility.T]");
    }
}

}  // namespace

double merton_fraction(const Market& market, double alpha)
{
    if (!(market.sigma > 0.0)) {
        throw DomainError("market.sigma2 must be > 0");
    }
    require_alpha(alpha);
    if (market.mu <= market.r) {
        return 0.0;
    }
    return (market.mu - market.r) / (market.sigma2() * alpha);
}

double merton_fraction_clamped(const Market& market, double alpha)
{
    return std::clamp(merton_fraction(market, alpha), 0.0, 1.0);
}

double k_of_x(double c, double lambda, const ClaimDistribution& claims, const Market& market, double alpha,
              double theta_star, double x)
{
    require_alpha(alpha);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("x must be finite and > 0");
    }
    if (!(lambda >= 0.0)) {
        throw DomainError("lambda must be >= 0");
    }
    const double beta = 1.0 - alpha;
    double claim_term = 0.0;
    if (lambda > 0.0) {
        const double xb = std::pow(x, beta);
        claim_term = lambda * (xb - truncated_power_moment(claims, x, alpha)) / xb;
    }
    return claim_term - c * beta / x - (market.r + (market.mu - market.r) * theta_star) * beta;
}

double k_of_x(const InsuranceModel& model, const Market& market, const Utility& utility, double theta_star,
              double x)
{
    return k_of_x(model.c, model.lambda, model.claims, market, utility.alpha, theta_star, x);
}

double k_limit(const Market& market, double alpha, double theta_star)
{
    require_alpha(alpha);
    return -(1.0 - alpha) * (market.r + theta_star * (market.mu - market.r));
}

double z_profile(double R, const Utility& utility, double t)
{
    require_time(utility, t);
    const double a = R + utility.kappa * utility.alpha;
    const double d = utility.T - t;
    const double bracket = a == 0.0 ? d : -std::expm1(-a * d) / a;
    const double discount = std::exp(-utility.kappa * utility.alpha * t);
    return discount * bracket;
}

double f_profile(double R, const Utility& utility, double t)
{
    require_time(utility, t);
    const double a = R + utility.kappa * utility.alpha;
    const double d = utility.T - t;
    const double bracket = a == 0.0 ? d : -std::expm1(-a * d) / a;
    return std::exp(-utility.kappa * t) * std::pow(bracket, 1.0 / utility.alpha);
}

KRange k_range(const InsuranceModel& model, const Market& market, const Utility& utility, double theta_star,
               std::span<const double> xs)
{
    if (xs.empty()) {
        throw DomainError("k_range needs a nonempty surplus grid");
    }
    KRange out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double x : xs) {
        const double k = k_of_x(model, market, utility, theta_star, x);
        out.min = std::min(out.min, k);
        out.max = std::max(out.max, k);
    }
    return out;
}

HjbSolution::HjbSolution(const InsuranceModel& model, const Market& market, const Utility& utility, double x_ref)
    : market_(market), utility_(utility), x_ref_(x_ref)
{
    market_.validate();
    utility_.validate();
    if (!(x_ref > 0.0)) {
        throw DomainError("hjb.x_ref must be > 0");
    }
    theta_star_ = merton_fraction(market_, utility_.alpha);
    k_ref_ = k_of_x(model, market_, utility_, theta_star_, x_ref_);
    const double a = utility_.alpha;
    R_ = k_ref_ + 0.5 * a * (1.0 - a) * market_.sigma2() * theta_star_ * theta_star_;
}

double HjbSolution::value(double t, double x) const
{
    if (!(x >= 0.0)) {
        throw DomainError("x must be >= 0");
    }
    const double z = z_profile(R_, utility_, t);
    if (x == 0.0 || z == 0.0) {
        return 0.0;
    }
    return z * std::pow(x, 1.0 - utility_.alpha);
}

double HjbSolution::value_dx(double t, double x) const
{
    const double a = utility_.alpha;
    return z_profile(R_, utility_, t) * (1.0 - a) * std::pow(x, -a);
}

double HjbSolution::value_dxx(double t, double x) const
{
    const double a = utility_.alpha;
    return -z_profile(R_, utility_, t) * a * (1.0 - a) * std::pow(x, -a - 1.0);
}

}  // namespace ruinlab
