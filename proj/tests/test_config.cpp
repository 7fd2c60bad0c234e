#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "rowsim/config.hpp"
#include "rowsim/errors.hpp"

using namespace rowsim;

namespace {

std::vector<std::string> issues_of(std::string_view text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool any_starts_with(const std::vector<std::string>& issues, std::string_view prefix)
{
    for (const auto& s : issues)
        if (s.starts_with(prefix))
            return true;
    return false;
}

} // namespace

TEST(Config, EmptyTextGivesDefaults)
{
    EXPECT_EQ(parse_config(""), SimParams{});
    EXPECT_EQ(parse_config("# only a comment\n\n   \n"), SimParams{});
}

TEST(Config, DefaultsValidate)
{
    EXPECT_TRUE(SimParams{}.violations().empty());
    EXPECT_EQ(SimParams{}.step_count(), 400000);
    EXPECT_EQ(SimParams{}.steps_per_sample(), 20);
}

TEST(Config, PartialOverrideKeepsOtherDefaults)
{
    const auto p = parse_config("plasticity.i_wb = 0.02  # doubled\n"
                                "stimulus.input_kind = poisson\n"
                                "trace.record_weights = yes\n"
                                "rng_seed = 12345678901234\n");
    SimParams expected;
    expected.plasticity.i_wb = 0.02;
    expected.stimulus.input_kind = SpikeKind::Poisson;
    expected.trace.record_weights = true;
    expected.rng_seed = 12345678901234ULL;
    EXPECT_EQ(p, expected);
}

TEST(Config, CoarseStepRejectedNamingDt)
{
    // target_tau_ms = 10, so dt = 2 violates dt <= tau / 10
    const auto issues = issues_of("dt = 2\nduration = 2000\n");
    ASSERT_FALSE(issues.empty());
    EXPECT_TRUE(any_starts_with(issues, "dt:"));
}

TEST(Config, ParseErrorsCarryLineNumbers)
{
    const auto issues = issues_of("dt = 0.05\n"
                                  "no equals sign here\n"
                                  "plasticity.bogus = 1\n"
                                  "neuron.threshold = abc\n");
    ASSERT_EQ(issues.size(), 3u);
    EXPECT_TRUE(issues[0].starts_with("config:2: "));
    EXPECT_TRUE(issues[1].starts_with("config:3: plasticity.bogus"));
    EXPECT_TRUE(issues[2].starts_with("config:4: neuron.threshold"));
}

TEST(Config, ReportsAllViolationsAtOnce)
{
    const auto issues = issues_of("n_synapses = 0\n"
                                  "neuron.tau_m_ms = -1\n"
                                  "stimulus.target_weight = -0.5\n");
    EXPECT_TRUE(any_starts_with(issues, "n_synapses"));
    EXPECT_TRUE(any_starts_with(issues, "neuron.tau_m_ms"));
    EXPECT_TRUE(any_starts_with(issues, "stimulus.target_weight"));
}

TEST(Config, SamplingMustAlignWithStep)
{
    EXPECT_TRUE(any_starts_with(issues_of("trace.sample_interval_ms = 0.07\n"), "trace.sample_interval_ms"));
    EXPECT_TRUE(any_starts_with(issues_of("duration = 100.01\n"), "duration"));
}

TEST(Config, IntegerFieldsRejectFractions)
{
    EXPECT_TRUE(any_starts_with(issues_of("n_synapses = 2.5\n"), "config:1: n_synapses"));
}

TEST(Config, RenderRoundTrips)
{
    SimParams p;
    p.plasticity.drift_rate = 1.0 / 3.0;
    p.stimulus.target_kind = SpikeKind::Poisson;
    p.rng_seed = ~0ULL;
    p.trace.record_weights = true;
    EXPECT_EQ(parse_config(render_config(p)), p);
    EXPECT_EQ(parse_config(render_config(SimParams{})), SimParams{});
}

TEST(Config, EveryRegisteredKeyIsRendered)
{
    const auto text = render_config(SimParams{});
    for (const auto& f : param_fields())
        EXPECT_NE(text.find(std::string(f.key) + " = "), std::string::npos) << f.key;
}

TEST(Config, LayersOverBase)
{
    SimParams base;
    base.n_synapses = 12;
    const auto p = parse_config("dt = 0.1\n", base);
    EXPECT_EQ(p.n_synapses, 12);
    EXPECT_EQ(p.dt, 0.1);
}

TEST(Config, OverridesApplyAndReportBadEntries)
{
    SimParams p;
    const std::vector<std::string> good = {"plasticity.eta_up=0.2", "stimulus.target_kind=poisson"};
    apply_overrides(p, good);
    EXPECT_EQ(p.plasticity.eta_up, 0.2);
    EXPECT_EQ(p.stimulus.target_kind, SpikeKind::Poisson);

    const std::vector<std::string> bad = {"novalue", "nope=1"};
    try {
        apply_overrides(p, bad);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.issues().size(), 2u);
    }
}

TEST(Config, MissingFileIsIoError)
{
    EXPECT_THROW(load_config("/nonexistent/dir/params.cfg"), IoError);
}

TEST(Config, LoadsFromFileWithPathInMessages)
{
    const auto path = std::filesystem::temp_directory_path() / "rowsim_test_config.cfg";
    {
        std::ofstream out(path);
        out << "dt = 0.1\nwhat\n";
    }
    try {
        load_config(path);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_TRUE(e.issues()[0].starts_with(path.string() + ":2: "));
    }
    std::filesystem::remove(path);
}
