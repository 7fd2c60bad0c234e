#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string_view>

namespace rowsim {

enum class SpikeKind { Regular, Poisson };

const char* to_string(SpikeKind kind);
std::optional<SpikeKind> parse_spike_kind(std::string_view text);

struct SpikeSource {
    SpikeKind kind = SpikeKind::Regular;
    double rate = 0.0;  // Hz
    double start = 0.0; // ms
    double stop = std::numeric_limits<double>::infinity();
    double phase = 0.0; // ms; REGULAR spikes fall at phase + k * 1000 / rate
};

/// Seeded stream used by Poisson sources. Built on mt19937_64 with explicit
/// uniform and Poisson transforms so that draws are identical across standard
/// library implementations.
class SpikeRng {
public:
    explicit SpikeRng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform(); // [0, 1)
    std::int64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

/// Number of spikes `src` emits in the window [t0, t1).
///
/// REGULAR sources use phase arithmetic on the window edges, so adjacent
/// windows sharing an edge partition the spike train exactly. POISSON sources
/// draw Poisson(rate * overlap / 1000) from `rng`.
std::int64_t generate_spikes(const SpikeSource& src, double t0, double t1, SpikeRng& rng);

} // namespace rowsim
