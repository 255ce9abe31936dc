#pragma once

#include <cstdint>
#include <random>

namespace ruinlab {

/**
 * Reproducible random stream identified by (master_seed, stream_index).
 *
 * Each stream splits into independent substreams so that arrivals, claim
 * sizes and Brownian increments can be shared between simulations that
 * consume them differently (common random numbers).
 */
class RngStream {
public:
    using Engine = std::mt19937_64;

    enum class Substream : std::uint64_t { arrivals = 1, claims = 2, diffusion = 3 };

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
        : master_seed_(master_seed), stream_index_(stream_index)
    {
    }

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    Engine engine(Substream sub) const noexcept;

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
};

/// SplitMix64 finalizer; used to derive engine seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniform on the open interval (0, 1) with 53 bits of resolution.
inline double open_uniform(RngStream::Engine& eng) noexcept
{
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal quantile. u must lie in (0, 1).
double inverse_normal_cdf(double u);

/// Standard normal draw by inversion (monotone in the underlying uniform).
inline double standard_normal(RngStream::Engine& eng) { return inverse_normal_cdf(open_uniform(eng)); }

}  // namespace ruinlab
