#include "ruinlab/error.hpp"
#include "ruinlab/model.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace ruinlab;
using ruinlab::test::base_market;
using ruinlab::test::base_utility;

TEST_CASE("InsuranceModel validation")
{
    CHECK_NOTHROW(test::base_model().validate());
    CHECK_NOTHROW(test::base_model(0.0).validate());
    CHECK_THROWS_AS((InsuranceModel{100.0, 50.0, 1.0, ClaimDistribution::exponential(50.0)}.validate()), DomainError);
    CHECK_THROWS_AS((InsuranceModel{-1.0, 65.0, 1.0, ClaimDistribution::exponential(50.0)}.validate()), DomainError);
    CHECK_THROWS_AS((InsuranceModel{1.0, 65.0, 0.0, ClaimDistribution::exponential(50.0)}.validate()), DomainError);
    CHECK_THROWS_AS((InsuranceModel{1.0, 65.0, 1.0, ClaimDistribution::pareto(25.0, 1.0)}.validate()),
                    UndefinedMeanError);
}

TEST_CASE("Market validation and warning")
{
    CHECK_NOTHROW(base_market().validate());
    CHECK_FALSE(base_market().warning().has_value());
    CHECK(Market::from_variance(0.01, 0.01, 0.04).warning().has_value());
    CHECK_THROWS_AS(Market::from_variance(0.01, 0.02, 0.0), DomainError);
    try {
        Market::from_variance(0.01, 0.02, -1.0);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("sigma2") != std::string::npos);
    }
    CHECK_THROWS_AS((Market{-0.1, 0.0, 0.1}.validate()), DomainError);
}

TEST_CASE("Utility: boundary, monotone, concave")
{
    const Utility u{0.2, 0.7, 1.0};
    CHECK_NOTHROW(u.validate());
    CHECK_THROWS_AS((Utility{1.0, 0.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((Utility{0.5, 0.0, 0.0}.validate()), DomainError);
    for (double t : {0.0, 0.5, 1.0}) {
        CHECK(u(t, 0.0) == 0.0);
        double prev = u(t, 0.0);
        double prev_slope = std::numeric_limits<double>::infinity();
        for (double x = 1.0; x <= 1000.0; x += 1.0) {
            const double v = u(t, x);
            CHECK(v > prev);
            CHECK(v - prev < prev_slope);
            prev_slope = v - prev;
            prev = v;
        }
    }
}

TEST_CASE("Strategy evaluate")
{
    CHECK(Strategy::none().evaluate(0.3, 123.0) == 0.0);
    CHECK(Strategy::constant(0.4).evaluate(0.0, 0.0) == 0.4);
    CHECK_THROWS_AS(Strategy::constant(1.2), DomainError);
    CHECK_THROWS_AS(Strategy::constant(-0.1), DomainError);

    const auto merton = Strategy::merton(base_market(), base_utility());
    CHECK(merton.evaluate(0.0, 100.0) == doctest::Approx(0.8).epsilon(1e-12));

    // mu == r gives 0; an extreme ratio is clamped at 1
    CHECK(Strategy::merton(Market::from_variance(0.01, 0.01, 0.01), base_utility()).evaluate(0.0, 1.0) == 0.0);
    CHECK(Strategy::merton(Market::from_variance(0.0, 1.0, 0.01), base_utility()).evaluate(0.0, 1.0) == 1.0);
    CHECK(Strategy::merton(Market::from_variance(0.05, 0.01, 0.01), base_utility()).evaluate(0.0, 1.0) == 0.0);

    CHECK(Strategy::none().label() == "no_invest");
    CHECK(merton.label() == "merton");
    CHECK(Strategy::constant(0.4).label() == "fraction:0.4");
}

TEST_CASE("Strategy: range, purity and ratio invariance")
{
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double r = 0.05 * unit(gen);
        const double mu = r + 0.05 * unit(gen);
        const double s2 = 0.001 + 0.1 * unit(gen);
        const Utility u{0.05 + 0.9 * unit(gen), 0.0, 1.0};
        const auto m = Strategy::merton(Market::from_variance(r, mu, s2), u);
        const double t = unit(gen);
        const double x = 1000.0 * unit(gen);
        const double a = m.evaluate(t, x);
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        CHECK(m.evaluate(t, x) == a);
        for (double c : {0.5, 2.0, 10.0}) {
            const auto scaled = Strategy::merton(Market::from_variance(r, r + c * (mu - r), c * s2), u);
            CHECK(scaled.evaluate(t, x) == doctest::Approx(a).epsilon(1e-12));
        }
    }
}
