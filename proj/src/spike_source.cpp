#include "rowsim/spike_source.hpp"

#include <algorithm>
#include <cmath>

namespace rowsim {

namespace {

// Absorbs rounding in t = n * dt so that a spike sitting exactly on a window
// edge is attributed to the window that starts there.
constexpr double kPhaseEpsilon = 1e-9;

std::int64_t spikes_before(double t, double phase, double period)
{
    // Number of k >= 0 with phase + k * period < t.
    const double k = std::ceil((t - phase) / period - kPhaseEpsilon);
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(k));
}

} // namespace

const char* to_string(SpikeKind kind)
{
    return kind == SpikeKind::Regular ? "regular" : "poisson";
}

std::optional<SpikeKind> parse_spike_kind(std::string_view text)
{
    if (text == "regular" || text == "REGULAR")
        return SpikeKind::Regular;
    if (text == "poisson" || text == "POISSON")
        return SpikeKind::Poisson;
    return std::nullopt;
}

SpikeRng::SpikeRng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double SpikeRng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t SpikeRng::poisson(double mean)
{
    if (!(mean > 0.0))
        return 0;
    // Large means are split into independent chunks (Poisson counts add) so
    // exp(-mean) below never underflows.
    constexpr double kMaxChunk = 16.0;
    if (mean > kMaxChunk) {
        const auto chunks = static_cast<std::int64_t>(std::ceil(mean / kMaxChunk));
        std::int64_t total = 0;
        for (std::int64_t i = 0; i < chunks; ++i)
            total += poisson(mean / static_cast<double>(chunks));
        return total;
    }
    // Inversion by sequential search.
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf && p > 0.0) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

std::int64_t generate_spikes(const SpikeSource& src, double t0, double t1, SpikeRng& rng)
{
    if (!(src.rate > 0.0))
        return 0;
    const double lo = std::max(t0, src.start);
    const double hi = std::min(t1, src.stop);
    if (!(hi > lo))
        return 0;

    if (src.kind == SpikeKind::Poisson)
        return rng.poisson(src.rate * (hi - lo) / 1000.0);

    const double period = 1000.0 / src.rate;
    return std::max<std::int64_t>(0, spikes_before(hi, src.phase, period) - spikes_before(lo, src.phase, period));
}

} // namespace rowsim
