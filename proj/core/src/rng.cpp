#include "ruinlab/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>

namespace ruinlab {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::Engine RngStream::engine(Substream sub) const noexcept
{
    std::uint64_t h = mix64(master_seed_);
    h = mix64(h ^ stream_index_);
    h = mix64(h ^ static_cast<std::uint64_t>(sub));
    return Engine{h};
}

double inverse_normal_cdf(double u)
{
    // Phi^{-1}(u) = -sqrt(2) erfc^{-1}(2u)
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

}  // namespace ruinlab
