#include "ruinlab/error.hpp"
#include "ruinlab/hjb.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ruinlab;
using test::base_market;
using test::base_model;
using test::base_utility;

namespace {

// Classical RK4 for z' = R z - e^{-kappa alpha t}, integrated backward from z(T) = 0.
double rk4_backward(double R, const Utility& u, double t_target, int steps)
{
    auto rhs = [&](double t, double z) { return R * z - std::exp(-u.kappa * u.alpha * t); };
    const double h = -(u.T - t_target) / steps;
    double t = u.T;
    double z = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = rhs(t, z);
        const double k2 = rhs(t + h / 2, z + h / 2 * k1);
        const double k3 = rhs(t + h / 2, z + h / 2 * k2);
        const double k4 = rhs(t + h, z + h * k3);
        z += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
    }
    return z;
}

double ode_residual(double R, const Utility& u, double t)
{
    const double step = 1e-6 * u.T;
    const double a = u.alpha;
    auto z = [&](double s) { return std::pow(f_profile(R, u, s), a); };
    double dz;
    if (t - step < 0.0) dz = (-3.0 * z(t) + 4.0 * z(t + step) - z(t + 2 * step)) / (2 * step);
    else if (t + step > u.T) dz = (3.0 * z(t) - 4.0 * z(t - step) + z(t - 2 * step)) / (2 * step);
    else dz = (z(t + step) - z(t - step)) / (2 * step);
    return std::abs(dz - R * z(t) + std::exp(-u.kappa * a * t));
}

}  // namespace

TEST_CASE("merton_fraction")
{
    CHECK(merton_fraction(base_market(), 0.2) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(merton_fraction(Market::from_variance(0.02, 0.02, 0.04), 0.5) == 0.0);
    CHECK(merton_fraction(Market::from_variance(0.02, 0.02 + 0.04 * 0.5, 0.04), 0.5) == doctest::Approx(1.0));
    CHECK(merton_fraction(Market::from_variance(0.0, 0.5, 0.04), 0.5) == doctest::Approx(25.0));
    CHECK(merton_fraction_clamped(Market::from_variance(0.0, 0.5, 0.04), 0.5) == 1.0);
    CHECK_THROWS_AS(merton_fraction(Market{0.0, 0.1, 0.0}, 0.5), DomainError);
    CHECK_THROWS_AS(merton_fraction(base_market(), 1.0), DomainError);
}

TEST_CASE("K(x): frozen quadrature oracle values")
{
    // 30-digit mpmath evaluation of the K(x) definition with the truncated expectation.
    const double theta = merton_fraction(base_market(), 0.2);
    CHECK(k_of_x(base_model(), base_market(), base_utility(), theta, 100.0) ==
          doctest::Approx(-0.12793780524723033).epsilon(1e-10));
    CHECK(k_of_x(base_model(), base_market(), base_utility(), theta, 1000.0) ==
          doctest::Approx(-0.012347214040885633).epsilon(1e-9));
    CHECK(k_of_x(base_model(), base_market(), base_utility(), theta, 1e5) ==
          doctest::Approx(-0.000894359975973558).epsilon(1e-6));
}

TEST_CASE("K(x) -> -infinity as x -> 0+")
{
    const double theta = merton_fraction(base_market(), 0.2);
    CHECK(k_of_x(base_model(), base_market(), base_utility(), theta, 1e-6) < -1e6);
    CHECK_THROWS_AS(k_of_x(base_model(), base_market(), base_utility(), theta, 0.0), DomainError);
}

TEST_CASE("K(x) without claims")
{
    const double theta = 0.8;
    const auto m = base_market();
    const double expect = -(1.0 - 0.2) * (m.r + (m.mu - m.r) * theta);
    const double k = k_of_x(1e-9, 0.0, ClaimDistribution::exponential(50.0), m, 0.2, theta, 1e6);
    CHECK(k == doctest::Approx(expect).epsilon(1e-9));
    CHECK(k_limit(m, 0.2, theta) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("k_limit is the x -> infinity limit of K(x)")
{
    const auto m = base_market();
    const double theta = merton_fraction(m, 0.2);
    const double lim = k_limit(m, 0.2, theta);
    CHECK(lim == doctest::Approx(-0.8 * (8.4e-4 + 0.8 * 1.6e-4)).epsilon(1e-12));
    CHECK(k_limit(Market::from_variance(0.0, 0.0, 0.1), 0.3, 0.0) == 0.0);

    // K(x) - limit = ((1-a)(lambda E[U] - c)) / x + o(1/x) = -12 / x here
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {1e3, 1e4, 1e5}) {
        const double gap = std::abs(k_of_x(base_model(), m, base_utility(), theta, x) - lim);
        CHECK(gap < prev);
        prev = gap;
    }
    const double x = 1e5;
    CHECK(x * (k_of_x(base_model(), m, base_utility(), theta, x) - lim) == doctest::Approx(-12.0).epsilon(1e-2));
}

TEST_CASE("f_profile: terminal value and positivity")
{
    const Utility u{0.2, 0.3, 1.0};
    for (double R : {-1.0, -0.06, 0.0, 0.5}) {
        CHECK(f_profile(R, u, 1.0) == 0.0);
        for (double t = 0.0; t < 1.0; t += 0.05) CHECK(f_profile(R, u, t) > 0.0);
    }
    CHECK_THROWS_AS(f_profile(0.1, u, 1.5), DomainError);
}

TEST_CASE("f_profile solves z' - R z = -e^{-kappa alpha t}")
{
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    const double alphas[] = {0.2, 0.5, 0.8};
    const double horizons[] = {0.5, 1.0, 2.0};
    for (int draw = 0; draw < 20; ++draw) {
        const double R = sym(gen);
        const Utility u{alphas[draw % 3], sym(gen), horizons[(draw / 3) % 3]};
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) worst = std::max(worst, ode_residual(R, u, u.T * i / 100.0));
        CHECK(worst <= 1e-6);
        for (double t : {0.0, 0.25 * u.T, 0.75 * u.T}) {
            CHECK(z_profile(R, u, t) == doctest::Approx(rk4_backward(R, u, t, 4000)).epsilon(1e-9));
        }
    }
}

TEST_CASE("f_profile: degenerate R + kappa alpha = 0")
{
    const Utility u{0.5, 0.4, 1.5};
    const double R = -u.kappa * u.alpha;
    for (double t : {0.0, 0.3, 1.2}) {
        CHECK(f_profile(R, u, t) == doctest::Approx(std::exp(-u.kappa * t) * std::pow(u.T - t, 2.0)).epsilon(1e-14));
        CHECK(z_profile(R, u, t) == doctest::Approx(rk4_backward(R, u, t, 4000)).epsilon(1e-9));
        CHECK(ode_residual(R, u, t) <= 1e-6);
    }
    // continuity from either side
    CHECK(f_profile(R + 1e-9, u, 0.3) == doctest::Approx(f_profile(R, u, 0.3)).epsilon(1e-8));
}

TEST_CASE("f_profile depends on t through T - t and e^{-kappa t}")
{
    const double R = 0.3;
    const Utility u1{0.4, 0.2, 1.0};
    const Utility u2{0.4, 0.2, 1.5};
    for (double t : {0.0, 0.2, 0.7}) {
        const double shift = 0.5;
        const double lhs = f_profile(R, u2, t + shift) * std::exp(u2.kappa * (t + shift));
        const double rhs = f_profile(R, u1, t) * std::exp(u1.kappa * t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("value_closed_form: boundaries, homogeneity, shape")
{
    const HjbSolution sol(base_model(), base_market(), base_utility(), 100.0);
    CHECK(sol.theta_star() == doctest::Approx(0.8));
    CHECK(sol.R() == doctest::Approx(sol.k_ref() + 0.5 * 0.2 * 0.8 * 1e-3 * 0.64).epsilon(1e-14));
    for (double x : {0.0, 1.0, 100.0, 1e6}) CHECK(value_closed_form(sol, 1.0, x) == 0.0);
    for (double t : {0.0, 0.5, 1.0}) CHECK(value_closed_form(sol, t, 0.0) == 0.0);

    for (double c : {0.5, 3.0, 17.0}) {
        for (double x : {1.0, 50.0, 400.0}) {
            const double lhs = sol.value(0.3, c * x);
            const double rhs = std::pow(c, 0.8) * sol.value(0.3, x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
        }
    }

    for (double t : {0.0, 0.5}) {
        double prev_v = sol.value(t, 1.0);
        double prev_d = std::numeric_limits<double>::infinity();
        for (int i = 1; i < 200; ++i) {
            const double x = 1.0 + 999.0 * i / 199.0;
            const double v = sol.value(t, x);
            CHECK(v > prev_v);
            CHECK(v - prev_v < prev_d);
            prev_d = v - prev_v;
            prev_v = v;
        }
    }
    CHECK_THROWS_AS(HjbSolution(base_model(), base_market(), base_utility(), 0.0), DomainError);
}

TEST_CASE("Merton fraction maximises the HJB control term")
{
    const HjbSolution sol(base_model(), base_market(), base_utility(), 100.0);
    const auto m = base_market();
    const double star = merton_fraction(m, 0.2);
    for (double t : {0.0, 0.4}) {
        for (double x : {10.0, 100.0, 1000.0}) {
            const double vx = sol.value_dx(t, x);
            const double vxx = sol.value_dxx(t, x);
            auto term = [&](double th) { return 0.5 * m.sigma2() * th * th * x * x * vxx + (m.mu - m.r) * th * x * vx; };
            double best = 0.0;
            double best_val = -std::numeric_limits<double>::infinity();
            constexpr int n = 10'000;
            for (int i = 0; i <= n; ++i) {
                const double th = 2.0 * star * i / n;
                if (term(th) > best_val) {
                    best_val = term(th);
                    best = th;
                }
            }
            CHECK(std::abs(best - star) <= 2.0 * star / n);
        }
    }
}

TEST_CASE("k_range diagnostic")
{
    const double theta = 0.8;
    const double xs[] = {50.0, 100.0, 1000.0};
    const auto r = k_range(base_model(), base_market(), base_utility(), theta, xs);
    CHECK(r.min < r.max);
    CHECK(r.max == doctest::Approx(-0.012347214040885633).epsilon(1e-9));
    CHECK_THROWS_AS(k_range(base_model(), base_market(), base_utility(), theta, {}), DomainError);
}
