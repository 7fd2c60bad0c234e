#include <gtest/gtest.h>

#include <cmath>

#include "rowsim/errors.hpp"
#include "rowsim/experiments.hpp"
#include "rowsim/simulation.hpp"

using namespace rowsim;

namespace {

SimParams short_run(double duration = 1000.0)
{
    SimParams p;
    p.duration = duration;
    p.n_synapses = 8;
    p.stimulus.target_off_ms = duration / 2.0;
    p.trace.record_weights = true;
    return p;
}

SimParams poisson_run()
{
    auto p = short_run(2000.0);
    p.stimulus.input_kind = SpikeKind::Poisson;
    p.stimulus.input_rate_hz = 40.0;
    p.stimulus.target_kind = SpikeKind::Poisson;
    return p;
}

} // namespace

TEST(RowSimulation, RejectsSourceCountMismatch)
{
    auto p = short_run();
    EXPECT_THROW(RowSimulation(p, std::vector<SpikeSource>(3), target_source(p)), ConfigError);
}

TEST(RowSimulation, RejectsInvalidParams)
{
    auto p = short_run();
    p.dt = 5.0;
    EXPECT_THROW(RowSimulation{p}, ConfigError);
}

TEST(RowSimulation, SampleGridIncludesTimeZero)
{
    auto p = short_run(100.0);
    p.trace.sample_interval_ms = 2.0;
    const auto trace = run(p);
    ASSERT_EQ(trace.rows.size(), 51u);
    for (std::size_t i = 0; i < trace.rows.size(); ++i)
        EXPECT_DOUBLE_EQ(trace.rows[i].t, 2.0 * static_cast<double>(i));
    EXPECT_EQ(trace.rows.front().i_syn, 0.0);
    EXPECT_EQ(trace.rows.front().v_w.size(), 8u);
}

TEST(RowSimulation, SameSeedIsDeterministic)
{
    const auto p = poisson_run();
    const auto a = run(p), b = run(p);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.post_spikes, b.post_spikes);
    EXPECT_EQ(a.final_v_w, b.final_v_w);
}

TEST(RowSimulation, DifferentSeedsDiffer)
{
    auto p = poisson_run();
    const auto a = run(p);
    p.rng_seed = 2;
    EXPECT_NE(a.rows, run(p).rows);
}

TEST(RowSimulation, EverySpikeIsDelivered)
{
    for (const auto& p : {short_run(3000.0), poisson_run()}) {
        const auto trace = run(p);
        for (const auto& c : trace.input_counts)
            EXPECT_EQ(c.generated, c.delivered);
        EXPECT_EQ(trace.target_counts.generated, trace.target_counts.delivered);
    }
    // Regular counts match the analytic train: 25 Hz for 3 s, 1 kHz for 1.5 s.
    const auto trace = run(short_run(3000.0));
    for (const auto& c : trace.input_counts)
        EXPECT_EQ(c.delivered, 75);
    EXPECT_EQ(trace.target_counts.delivered, 1500);
}

TEST(RowSimulation, ObservablesStayFiniteAndInRange)
{
    auto p = poisson_run();
    p.stimulus.input_rate_hz = 300.0;
    p.plasticity.eta_up = 5.0;
    const auto trace = run(p);
    for (const auto& r : trace.rows) {
        for (double v : {r.t, r.i_syn, r.i_target, r.i_ca, r.membrane})
            ASSERT_TRUE(std::isfinite(v));
        EXPECT_GE(r.i_syn, 0.0);
        EXPECT_GE(r.i_target, 0.0);
        EXPECT_GE(r.i_ca, 0.0);
        for (double w : r.v_w) {
            EXPECT_GE(w, 0.0);
            EXPECT_LE(w, p.plasticity.v_dd);
        }
    }
}

TEST(RowSimulation, ClosedGateFreezesWeightsOffAttractor)
{
    auto p = short_run(3000.0);
    p.plasticity.theta_ca_low = 100.0; // calcium never reaches it
    p.plasticity.theta_ca_high = 200.0;
    p.plasticity.tristability_enabled = false;
    p.plasticity.v_w_init = 0.7;
    const auto trace = run(p);
    ASSERT_GT(trace.post_spikes, 0);
    for (double w : trace.final_v_w)
        EXPECT_EQ(w, 0.7);
    for (const auto& r : trace.rows)
        EXPECT_FALSE(r.learn);
}

TEST(RowSimulation, ClosedGateKeepsAttractorWeightsBitIdentical)
{
    auto p = short_run(5000.0);
    p.plasticity.theta_ca_low = 100.0;
    p.plasticity.theta_ca_high = 200.0;
    for (double a : {0.0, p.plasticity.v_dd / 2.0, p.plasticity.v_dd}) {
        p.plasticity.v_w_init = a;
        const auto trace = run(p);
        for (const auto& r : trace.rows)
            for (double w : r.v_w)
                ASSERT_EQ(w, a);
    }
}

TEST(RowSimulation, ZeroDriftMatchesDisabledTristability)
{
    auto p = short_run(4000.0);
    p.plasticity.drift_rate = 0.0;
    const auto zero_drift = run(p);
    p.plasticity.drift_rate = 0.01;
    p.plasticity.tristability_enabled = false;
    const auto disabled = run(p);
    EXPECT_EQ(zero_drift.rows, disabled.rows);
    EXPECT_EQ(zero_drift.final_v_w, disabled.final_v_w);
}

TEST(RowSimulation, PostSpikeFlagsCoverAllSpikes)
{
    const auto trace = run(short_run(2000.0));
    std::int64_t flagged = 0;
    for (const auto& r : trace.rows)
        flagged += r.post_spike ? 1 : 0;
    EXPECT_GT(flagged, 0);
    EXPECT_LE(flagged, trace.post_spikes);
    EXPECT_FALSE(trace.rows.front().post_spike);
}

TEST(RowSimulation, TargetAloneTeachesWeightsUp)
{
    // With the default thresholds, 10 s of target + input lifts the weights out
    // of LOW and the learned current approaches the target.
    SimParams p;
    p.duration = 10000.0;
    p.stimulus.target_off_ms = 10000.0;
    const auto trace = run(p);
    for (double w : trace.final_v_w)
        EXPECT_GE(w, p.plasticity.v_thl);
}

TEST(Sweep, EmptyValuesGiveNoRuns)
{
    EXPECT_TRUE(sweep(short_run(), "plasticity.drift_rate", {}).empty());
}

TEST(Sweep, UnknownAxisIsConfigError)
{
    const std::vector<double> v = {1.0};
    EXPECT_THROW(sweep(short_run(), "plasticity.nope", v), ConfigError);
    EXPECT_THROW(sweep(short_run(), "stimulus.input_kind", v), ConfigError);
}

TEST(Sweep, InvalidValueReportsRun)
{
    const std::vector<double> v = {0.01, -1.0};
    try {
        sweep(short_run(), "plasticity.drift_rate", v);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        ASSERT_FALSE(e.issues().empty());
        EXPECT_NE(e.issues().front().find("run 1"), std::string::npos);
    }
}

TEST(Sweep, RunsMatchSequentialExecutionInOrder)
{
    const auto base = poisson_run();
    const std::vector<double> v = {0.0005, 0.002, 0.001};
    const auto traces = sweep(base, "plasticity.drift_rate", v);
    const auto params = sweep_params(base, "plasticity.drift_rate", v);
    ASSERT_EQ(traces.size(), 3u);
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_EQ(params[i].plasticity.drift_rate, v[i]);
        EXPECT_EQ(params[i].rng_seed, sweep_seed(base.rng_seed, i));
        EXPECT_EQ(traces[i].rows, run(params[i]).rows);
    }
}

TEST(Sweep, SeedsAreDistinct)
{
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < 1000; ++i)
        seen.insert(sweep_seed(7, i));
    EXPECT_EQ(seen.size(), 1000u);
}

TEST(Sweep, FasterDriftCrystallizesSooner)
{
    const auto plan = preset_plan(Preset::TristabilitySweep);
    const std::vector<double> v = {0.001, 0.004};
    const auto traces = sweep(plan.base, plan.axis, v);
    const auto params = sweep_params(plan.base, plan.axis, v);
    const auto slow = summarize(traces[0], params[0]);
    const auto fast = summarize(traces[1], params[1]);
    ASSERT_TRUE(slow.time_to_attractor_ms);
    ASSERT_TRUE(fast.time_to_attractor_ms);
    EXPECT_LT(*fast.time_to_attractor_ms, *slow.time_to_attractor_ms);
}
