#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rowsim/spike_source.hpp"

using namespace rowsim;

namespace {

std::int64_t count_in_steps(const SpikeSource& src, double t_end, double dt, SpikeRng& rng)
{
    const auto steps = static_cast<std::int64_t>(std::llround(t_end / dt));
    std::int64_t total = 0;
    for (std::int64_t n = 0; n < steps; ++n)
        total += generate_spikes(src, static_cast<double>(n) * dt, static_cast<double>(n + 1) * dt, rng);
    return total;
}

} // namespace

TEST(SpikeKind, RoundTrip)
{
    EXPECT_EQ(parse_spike_kind("regular"), SpikeKind::Regular);
    EXPECT_EQ(parse_spike_kind(to_string(SpikeKind::Poisson)), SpikeKind::Poisson);
    EXPECT_FALSE(parse_spike_kind("bursty"));
}

TEST(Regular, TwentyFiveHzForOneSecond)
{
    SpikeSource src{SpikeKind::Regular, 25.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
    SpikeRng rng(1);
    EXPECT_EQ(generate_spikes(src, 0.0, 1000.0, rng), 25);
    EXPECT_EQ(count_in_steps(src, 1000.0, 0.05, rng), 25);
}

TEST(Regular, StepPartitionMatchesSingleWindow)
{
    SpikeRng rng(1);
    for (double rate : {1.0, 7.0, 25.0, 333.0, 1000.0}) {
        for (double phase : {0.0, 0.3, 12.5}) {
            SpikeSource src{SpikeKind::Regular, rate, 0.0, std::numeric_limits<double>::infinity(), phase};
            EXPECT_EQ(count_in_steps(src, 2000.0, 0.05, rng), generate_spikes(src, 0.0, 2000.0, rng))
                << rate << " Hz, phase " << phase;
        }
    }
}

TEST(Regular, RespectsActiveWindow)
{
    SpikeSource src{SpikeKind::Regular, 1000.0, 10.0, 20.0, 10.0};
    SpikeRng rng(1);
    EXPECT_EQ(generate_spikes(src, 0.0, 100.0, rng), 10);
    EXPECT_EQ(generate_spikes(src, 0.0, 10.0, rng), 0);
    EXPECT_EQ(generate_spikes(src, 20.0, 30.0, rng), 0);
}

TEST(Poisson, HundredHzForHundredSeconds)
{
    SpikeSource src{SpikeKind::Poisson, 100.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
    SpikeRng rng(2024);
    const auto n = count_in_steps(src, 100'000.0, 0.05, rng);
    EXPECT_NEAR(static_cast<double>(n), 10000.0, 300.0);
}

TEST(Poisson, LargeMeanSampler)
{
    SpikeRng rng(5);
    const int draws = 20000;
    for (double mean : {0.3, 4.0, 40.0, 250.0}) {
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const auto k = static_cast<double>(rng.poisson(mean));
            sum += k;
            sq += k * k;
        }
        const double m = sum / draws;
        const double var = sq / draws - m * m;
        EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / draws)) << mean;
        EXPECT_NEAR(var, mean, 0.05 * mean) << mean;
    }
}

TEST(Sources, ZeroRateNeverFires)
{
    SpikeRng rng(3);
    for (auto kind : {SpikeKind::Regular, SpikeKind::Poisson}) {
        SpikeSource src{kind, 0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
        EXPECT_EQ(count_in_steps(src, 10'000.0, 0.05, rng), 0);
    }
}

TEST(SpikeRng, SameSeedAndStreamReproduce)
{
    SpikeRng a(99, 4), b(99, 4), c(99, 5);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        differs = differs || u != c.uniform();
    }
    EXPECT_TRUE(differs);
}

TEST(SpikeRng, KnownDrawsArePinned)
{
    // Guards the cross-platform stream. seed_seq and mt19937_64 are fully
    // specified by the standard; the transforms on top are ours.
    std::seed_seq seq{1u, 0u, 0u, 0u};
    std::mt19937_64 engine(seq);
    const double u0 = static_cast<double>(engine() >> 11) / 9007199254740992.0;

    SpikeRng rng(1, 0);
    EXPECT_EQ(rng.uniform(), u0);
    EXPECT_EQ(u0, 0.4180840146625463);

    SpikeRng draws(1, 0);
    const std::vector<std::int64_t> expected = {2, 2, 1, 1, 0, 2, 3, 4};
    std::vector<std::int64_t> got;
    for (int i = 0; i < 8; ++i)
        got.push_back(draws.poisson(2.5));
    EXPECT_EQ(got, expected);
}
