#include "ruinlab/claims.hpp"

#include "ruinlab/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ruinlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite and > 0");
    }
}

std::string fmt_num(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ClaimDistribution::ClaimDistribution(Law law) : law_(law)
{
    std::visit(overloaded{
                   [](const Exponential& e) { require_positive(e.mean, "exponential mean"); },
                   [](const Pareto& p) {
                       require_positive(p.scale, "pareto scale");
                       require_positive(p.shape, "pareto shape");
                   },
                   [](const Weibull& w) {
                       require_positive(w.shape, "weibull shape");
                       require_positive(w.scale, "weibull scale");
                   },
               },
               law_);
}

double ClaimDistribution::sample(double u) const
{
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("uniform variate must lie in (0, 1)");
    }
    const double tail = -std::log1p(-u);  // -ln(1 - u), exact near u = 0
    return std::visit(overloaded{
                          [&](const Exponential& e) { return e.mean * tail; },
                          [&](const Pareto& p) { return p.scale * std::exp(tail / p.shape); },
                          [&](const Weibull& w) { return w.scale * std::pow(tail, 1.0 / w.shape); },
                      },
                      law_);
}

double ClaimDistribution::cdf(double x) const noexcept
{
    if (!(x > 0.0)) {
        return 0.0;
    }
    return std::visit(overloaded{
                          [&](const Exponential& e) { return -std::expm1(-(x / e.mean)); },
                          [&](const Pareto& p) {
                              if (x <= p.scale) return 0.0;
                              return -std::expm1(-p.shape * std::log(x / p.scale));
                          },
                          [&](const Weibull& w) { return -std::expm1(-std::pow(x / w.scale, w.shape)); },
                      },
                      law_);
}

double ClaimDistribution::pdf(double x) const noexcept
{
    if (!(x > 0.0)) {
        return 0.0;
    }
    return std::visit(overloaded{
                          [&](const Exponential& e) { return (1.0 / e.mean) * std::exp(-(x / e.mean)); },
                          [&](const Pareto& p) {
                              if (x < p.scale) return 0.0;
                              return p.shape / x * std::pow(p.scale / x, p.shape);
                          },
                          [&](const Weibull& w) {
                              const double z = x / w.scale;
                              return (w.shape / w.scale) * std::pow(z, w.shape - 1.0) *
                                     std::exp(-std::pow(z, w.shape));
                          },
                      },
                      law_);
}

double ClaimDistribution::mean() const
{
    return std::visit(overloaded{
                          [](const Exponential& e) { return e.mean; },
                          [](const Pareto& p) -> double {
                              if (!(p.shape > 1.0)) {
                                  throw UndefinedMeanError("pareto mean undefined for shape <= 1");
                              }
                              return p.shape * p.scale / (p.shape - 1.0);
                          },
                          [](const Weibull& w) { return w.scale * boost::math::tgamma(1.0 + 1.0 / w.shape); },
                      },
                      law_);
}

double ClaimDistribution::support_min() const noexcept
{
    if (const auto* p = std::get_if<Pareto>(&law_)) {
        return p->scale;
    }
    return 0.0;
}

std::string ClaimDistribution::family() const
{
    return std::visit(overloaded{
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const Pareto&) { return std::string("pareto"); },
                          [](const Weibull&) { return std::string("weibull"); },
                      },
                      law_);
}

std::string ClaimDistribution::describe() const
{
    return std::visit(overloaded{
                          [](const Exponential& e) { return "exponential(" + fmt_num(e.mean) + ")"; },
                          [](const Pareto& p) {
                              return "pareto(" + fmt_num(p.scale) + ", " + fmt_num(p.shape) + ")";
                          },
                          [](const Weibull& w) {
                              return "weibull(" + fmt_num(w.shape) + ", " + fmt_num(w.scale) + ")";
                          },
                      },
                      law_);
}

bool operator==(const ClaimDistribution& a, const ClaimDistribution& b)
{
    if (a.law_.index() != b.law_.index()) {
        return false;
    }
    return std::visit(overloaded{
                          [&](const Exponential& e) { return e.mean == std::get<Exponential>(b.law_).mean; },
                          [&](const Pareto& p) {
                              const auto& q = std::get<Pareto>(b.law_);
                              return p.scale == q.scale && p.shape == q.shape;
                          },
                          [&](const Weibull& w) {
                              const auto& q = std::get<Weibull>(b.law_);
                              return w.shape == q.shape && w.scale == q.scale;
                          },
                      },
                      a.law_);
}

double premium_from_loading(double lambda, double mean_claim, double rho)
{
    require_positive(lambda, "lambda");
    require_positive(mean_claim, "mean claim");
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw DomainError("rho must be finite and >= 0");
    }
    return (1.0 + rho) * lambda * mean_claim;
}

bool net_profit_holds(double c, double lambda, const ClaimDistribution& dist)
{
    require_positive(lambda, "lambda");
    return c / lambda > dist.mean();
}

double truncated_power_moment(const ClaimDistribution& dist, double x, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("x must be finite and >= 0");
    }
    const double lo = dist.support_min();
    if (x <= lo) {
        return 0.0;
    }
    using boost::math::quadrature::gauss_kronrod;
    const double beta = 1.0 - alpha;
    const double split = 0.5 * (x - lo);  // distance from x to the split point
    constexpr unsigned max_depth = 15;
    constexpr double rel_tol = 1e-13;

    // far piece: u in [lo, x - split]
    double err_far = 0.0;
    double far = gauss_kronrod<double, 31>::integrate(
        [&](double u) { return std::pow(x - u, beta) * dist.pdf(u); }, lo, x - split, max_depth, rel_tol,
        &err_far);

    // near piece: u = x - s^2, s in [0, sqrt(split)]
    double err_near = 0.0;
    double near = gauss_kronrod<double, 31>::integrate(
        [&](double s) {
            const double s2 = s * s;
            return 2.0 * s * std::pow(s2, beta) * dist.pdf(x - s2);
        },
        0.0, std::sqrt(split), max_depth, rel_tol, &err_near);

    const double value = far + near;
    const double err = err_far + err_near;
    const double tol = std::max(1e-10, 1e-12 * std::abs(value));
    if (!std::isfinite(value) || err > tol) {
        std::ostringstream os;
        os << "truncated_power_moment: quadrature did not converge for " << dist.describe() << ", x=" << x
           << ", alpha=" << alpha << " (estimate " << value << ", error " << err << ", tolerance " << tol << ")";
        throw NumericalError(os.str());
    }
    return std::clamp(value, 0.0, std::pow(x, beta));
}

double kummer_1f1_unit_a(double b, double z)
{
    if (!(b > 1.0) || !(z >= 0.0)) {
        throw DomainError("kummer_1f1_unit_a requires b > 1 and z >= 0");
    }
    if (z == 0.0) {
        return 1.0;
    }
    // 1F1(1; b; -z) = e^{-z} 1F1(b - 1; b; z) = sum_n (b-1)/(b-1+n) * e^{-z} z^n / n!
    // Each term is built in log space so large z neither overflows nor underflows.
    const double log_z = std::log(z);
    double sum = 0.0;
    for (long n = 0;; ++n) {
        const double dn = static_cast<double>(n);
        const double log_poisson = dn * log_z - z - std::lgamma(dn + 1.0);
        const double term = (b - 1.0) / (b - 1.0 + dn) * std::exp(log_poisson);
        sum += term;
        if (dn > z && term < 1e-18 * sum) {
            break;
        }
        if (n > 10'000'000) {
            throw NumericalError("kummer_1f1_unit_a: series did not converge");
        }
    }
    return sum;
}

double truncated_power_moment_exponential_series(double mean, double x, double alpha)
{
    require_positive(mean, "exponential mean");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (!(x > 0.0)) {
        return 0.0;
    }
    const double theta = 1.0 / mean;
    const double b = 3.0 - alpha;
    return theta * std::pow(x, 2.0 - alpha) / (2.0 - alpha) * kummer_1f1_unit_a(b, theta * x);
}

}  // namespace ruinlab
