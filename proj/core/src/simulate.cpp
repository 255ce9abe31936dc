#include "ruinlab/simulate.hpp"

#include "ruinlab/error.hpp"
#include "ruinlab/simulate_testing.hpp"

#include <cmath>

namespace ruinlab {

void SimGrid::validate() const
{
    if (n_steps < 1) {
        throw DomainError("sim.n_steps must be >= 1");
    }
}

std::vector<double> draw_arrivals(double lambda, double t0, double t1, const RngStream& stream)
{
    if (!(lambda > 0.0)) {
        throw DomainError("lambda must be > 0");
    }
    if (!(t1 > t0)) {
        throw DomainError("arrival window must have t1 > t0");
    }
    auto eng = stream.engine(RngStream::Substream::arrivals);
    std::vector<double> times;
    double t = t0;
    for (;;) {
        t += -std::log(open_uniform(eng)) / lambda;
        if (!(t < t1)) {
            break;
        }
        // cumulative sums of positive gaps can still round onto the previous value
        if (times.empty() ? t > t0 : t > times.back()) {
            times.push_back(t);
        }
    }
    return times;
}

std::vector<double> draw_arrivals(double lambda, double T, const RngStream& stream)
{
    return draw_arrivals(lambda, 0.0, T, stream);
}

namespace {

struct Inputs {
    const InsuranceModel& model;
    const Market& market;
    const Utility& utility;
    const Strategy& strategy;
    const SimGrid& grid;
};

// ClaimSource: size() arrivals, time(i), amount(i) (called once per i, in order).
template <class ClaimSource>
PathOutcome run_euler(const Inputs& in, const PathSegment& seg, ClaimSource& claims, RngStream::Engine& gauss)
{
    const double T = in.utility.T;
    const double c = in.model.c;
    const double r = in.market.r;
    const double mu = in.market.mu;
    const double sigma = in.market.sigma;

    PathOutcome out;
    double x = seg.x_start;
    std::size_t k = seg.start_step;
    double t = in.grid.time_at(T, k);
    std::size_t next_claim = 0;

    while (k < seg.end_step) {
        const double t_grid = in.grid.time_at(T, k + 1);
        bool at_claim = false;
        double t_next = t_grid;
        if (next_claim < claims.size() && claims.time(next_claim) <= t_grid) {
            t_next = claims.time(next_claim);
            at_claim = true;
        }
        const double delta = t_next - t;
        if (delta > 0.0) {
            const double theta = in.strategy.evaluate(t, x);
            out.accumulated_utility += in.utility(t, x) * delta;
            double dx = (c + mu * theta * x + r * (1.0 - theta) * x) * delta;
            const double vol = sigma * theta;
            if (vol != 0.0) {
                dx += vol * x * std::sqrt(delta) * standard_normal(gauss);
            }
            x += dx;
        }
        t = t_next;
        if (t_next == t_grid) {
            ++k;
        }
        if (at_claim) {
            x -= claims.amount(next_claim);
            ++next_claim;
            ++out.n_claims;
        }
        if (!std::isfinite(x)) {
            out.valid = false;
            out.terminal_surplus = x;
            return out;
        }
        if (x < 0.0) {
            out.ruined = true;
            out.ruin_time = t;
            out.terminal_surplus = 0.0;
            return out;
        }
    }
    out.terminal_surplus = x;
    return out;
}

void check_segment(const Inputs& in, const PathSegment& seg)
{
    in.grid.validate();
    if (seg.start_step > seg.end_step || seg.end_step > in.grid.n_steps) {
        throw DomainError("path segment must satisfy start_step <= end_step <= n_steps");
    }
    if (!(seg.x_start >= 0.0) || !std::isfinite(seg.x_start)) {
        throw DomainError("segment start surplus must be finite and >= 0");
    }
}

struct RandomClaims {
    std::vector<double> times;
    const ClaimDistribution& dist;
    RngStream::Engine eng;

    std::size_t size() const { return times.size(); }
    double time(std::size_t i) const { return times[i]; }
    double amount(std::size_t) { return dist.sample(open_uniform(eng)); }
};

struct ScheduledClaims {
    std::span<const testing::ClaimEvent> events;

    std::size_t size() const { return events.size(); }
    double time(std::size_t i) const { return events[i].time; }
    double amount(std::size_t i) const { return events[i].amount; }
};

}  // namespace

PathOutcome simulate_segment(const InsuranceModel& model, const Market& market, const Utility& utility,
                             const Strategy& strategy, const SimGrid& grid, const PathSegment& segment,
                             const RngStream& stream)
{
    const Inputs in{model, market, utility, strategy, grid};
    check_segment(in, segment);
    const double t0 = grid.time_at(utility.T, segment.start_step);
    const double t1 = grid.time_at(utility.T, segment.end_step);
    RandomClaims claims{{}, model.claims, stream.engine(RngStream::Substream::claims)};
    if (t1 > t0) {
        claims.times = draw_arrivals(model.lambda, t0, t1, stream);
    }
    auto gauss = stream.engine(RngStream::Substream::diffusion);
    return run_euler(in, segment, claims, gauss);
}

PathOutcome simulate_path(const InsuranceModel& model, const Market& market, const Utility& utility,
                          const Strategy& strategy, const SimGrid& grid, const RngStream& stream)
{
    return simulate_segment(model, market, utility, strategy, grid, PathSegment{0, grid.n_steps, model.x0},
                            stream);
}

namespace testing {

PathOutcome simulate_path_with_schedule(const InsuranceModel& model, const Market& market, const Utility& utility,
                                        const Strategy& strategy, const SimGrid& grid,
                                        std::span<const ClaimEvent> schedule, const RngStream& stream)
{
    const Inputs in{model, market, utility, strategy, grid};
    const PathSegment seg{0, grid.n_steps, model.x0};
    check_segment(in, seg);
    double prev = 0.0;
    for (const auto& e : schedule) {
        if (!(e.time > prev) || e.time > utility.T || !(e.amount >= 0.0)) {
            throw DomainError("claim schedule must be strictly increasing in (0, T] with amounts >= 0");
        }
        prev = e.time;
    }
    ScheduledClaims claims{schedule};
    auto gauss = stream.engine(RngStream::Substream::diffusion);
    return run_euler(in, seg, claims, gauss);
}

}  // namespace testing
}  // namespace ruinlab
