#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowsim/params.hpp"
#include "rowsim/simulation.hpp"

namespace rowsim {

enum class Preset { Fig5Forget, Fig5Retain, TristabilitySweep, HysteresisSweep };

const char* to_string(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);
std::span<const Preset> all_presets();

// Hysteresis windows of the learn/forget presets, as fractions of theta_ca_high.
inline constexpr double kSmallWindowFraction = 0.05;
inline constexpr double kLargeWindowFraction = 0.40;

// Averaging span of the trained and post-removal i_syn levels.
inline constexpr double kSummarySpanMs = 2000.0;

struct PresetPlan {
    Preset preset;
    SimParams base;
    std::string axis;           // empty for single-run presets
    std::vector<double> values; // one run per value

    bool is_sweep() const { return !axis.empty(); }
    std::vector<SimParams> runs() const;
};

/// Resolves a preset on top of `base`. Preset keys replace the corresponding
/// values of `base`; hysteresis windows are scaled from base's theta_ca_high.
PresetPlan preset_plan(Preset preset, const SimParams& base = SimParams{});

/// Observables derived from a trace alone (plus the params that produced it).
struct RunSummary {
    double target_off_ms = 0.0;
    double trained_i_syn = 0.0;      // mean over the last 2 s before target removal
    double final_i_syn = 0.0;        // mean over the last 2 s of the run
    std::optional<double> retention_ratio;
    std::optional<double> learn_reentry_ms; // first sample at/after removal with learn on
    double stim_end_ms = 0.0;               // last instant any source can spike, capped at the run end
    std::optional<double> v_w_at_stim_end;  // synapse 0, when weights were recorded
    std::optional<double> final_v_w;        // synapse 0
    std::optional<double> time_to_attractor_ms; // from stim end until every v_w sits on its attractor for good
};

RunSummary summarize(const Trace& trace, const SimParams& params);

/// Summary CSV: one row per run.
std::string summary_csv_header();
std::string summary_csv_row(std::string_view run_label, std::string_view axis, std::optional<double> value,
                            const RunSummary& summary);

/// Runs a preset and writes `<preset>_trace.csv` (or `<preset>_<i>_trace.csv`
/// per sweep value) plus `<preset>_summary.csv` into `out_dir`. Returns the
/// written paths, traces first. Throws IoError with path context.
std::vector<std::filesystem::path> run_preset(Preset preset, const std::filesystem::path& out_dir,
                                              const SimParams& base = SimParams{});

/// Same as run_preset for an already resolved (and possibly edited) plan.
std::vector<std::filesystem::path> run_plan(const PresetPlan& plan, const std::filesystem::path& out_dir);

/// Generic sweep over `axis` with the same file layout, labelled `label`.
std::vector<std::filesystem::path> run_sweep(const SimParams& base, std::string_view axis,
                                             std::span<const double> values, const std::filesystem::path& out_dir,
                                             std::string_view label = "sweep");

struct CalciumProbes {
    double target_on_zero = 0.0;    // weights at 0, target on
    double target_on_mid = 0.0;     // weights at v_dd/2, target on
    double target_on_trained = 0.0; // weights at v_dd, target on
    double target_off_mid = 0.0;
    double target_off_trained = 0.0;
    double quiescent = 0.0;         // no input at all
};

struct CaThresholds {
    double theta_ca_low = 0.0;
    double theta_ca_high = 0.0;
    CalciumProbes probes;
};

/// Mean calcium of short frozen-weight probe runs (learning disabled) in each
/// stimulation regime.
CalciumProbes probe_calcium(const SimParams& params);

/// Places theta_ca_high so that the trained, target-off calcium level sits
/// midway between the switch-down levels of the small and large hysteresis
/// windows, and theta_ca_low at half of the lowest calcium level that must
/// still count as "learning" (target alone, or mid weights without target).
/// Throws CalibrationError when the probes do not separate the regimes.
CaThresholds calibrate_ca_thresholds(const SimParams& params);

/// Config-file text carrying the calibrated thresholds, with the probe levels
/// as comments.
std::string calibration_config_text(const CaThresholds& thresholds);

} // namespace rowsim
