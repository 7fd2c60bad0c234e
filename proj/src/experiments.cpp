#include "rowsim/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "rowsim/errors.hpp"
#include "rowsim/trace_io.hpp"

namespace rowsim {

namespace {

constexpr std::array kPresets = {Preset::Fig5Forget, Preset::Fig5Retain, Preset::TristabilitySweep,
                                 Preset::HysteresisSweep};

// Learn/forget protocol: inputs for the whole run, target during training only.
constexpr double kTrainingMs = 10000.0;
constexpr double kInferenceMs = 10000.0;
constexpr std::int64_t kRowSynapses = 40;
constexpr double kInputRateHz = 25.0;
constexpr double kTargetRateHz = 1000.0;

// Crystallization protocol: a short target burst from the mid attractor with the
// learn gate held open, then no stimulation.
constexpr double kTristabilityStimMs = 100.0;
constexpr double kTristabilityDurationMs = 3000.0;
constexpr double kGateAlwaysOpenHigh = 1000.0; // nA; far above any calcium level
constexpr std::array kDriftRates = {0.0005, 0.001, 0.002, 0.004};

constexpr std::array kHysteresisFractions = {kSmallWindowFraction, 0.15, kLargeWindowFraction};

// theta_ca_high is placed so the trained, target-off calcium level sits at this
// fraction of it: midway between 1 - small and 1 - large window fractions.
constexpr double kTargetOffFraction = 1.0 - 0.5 * (kSmallWindowFraction + kLargeWindowFraction);
constexpr double kLowThresholdFraction = 0.5;

SimParams fig5_params(const SimParams& base, double window_fraction)
{
    SimParams p = base;
    p.n_synapses = kRowSynapses;
    p.duration = kTrainingMs + kInferenceMs;
    p.plasticity.v_w_init = 0.0;
    p.plasticity.i_bh_window = window_fraction * base.plasticity.theta_ca_high;
    auto& s = p.stimulus;
    s.input_kind = SpikeKind::Regular;
    s.input_rate_hz = kInputRateHz;
    s.input_start_ms = 0.0;
    s.input_stop_ms = std::numeric_limits<double>::infinity();
    s.target_kind = SpikeKind::Regular;
    s.target_rate_hz = kTargetRateHz;
    s.target_on_ms = 0.0;
    s.target_off_ms = kTrainingMs;
    return p;
}

SimParams tristability_params(const SimParams& base)
{
    SimParams p = base;
    p.n_synapses = kRowSynapses;
    p.duration = kTristabilityDurationMs;
    p.plasticity.v_w_init = base.plasticity.v_dd / 2.0;
    p.plasticity.theta_ca_low = 0.0;
    p.plasticity.theta_ca_high = kGateAlwaysOpenHigh;
    p.plasticity.i_bh_window = 0.0;
    p.plasticity.tristability_enabled = true;
    auto& s = p.stimulus;
    s.input_kind = SpikeKind::Regular;
    s.input_rate_hz = kInputRateHz;
    s.input_start_ms = 0.0;
    s.input_stop_ms = kTristabilityStimMs;
    s.target_kind = SpikeKind::Regular;
    s.target_rate_hz = kTargetRateHz;
    s.target_on_ms = 0.0;
    s.target_off_ms = kTristabilityStimMs;
    p.trace.record_weights = true;
    return p;
}

double mean_i_syn(const Trace& trace, double from, double to, bool include_from, bool include_to)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : trace.rows) {
        const bool after = include_from ? r.t >= from : r.t > from;
        const bool before = include_to ? r.t <= to : r.t < to;
        if (after && before) {
            sum += r.i_syn;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double active_until(const SpikeSource& src, double duration)
{
    if (!(src.rate > 0.0) || !(src.stop > src.start) || src.start >= duration)
        return 0.0;
    return std::min(src.stop, duration);
}

std::string optional_cell(std::optional<double> v, std::string_view missing)
{
    return v ? format_csv_number(*v) : std::string(missing);
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> write_runs(const std::vector<SimParams>& runs, const std::vector<Trace>& traces,
                                              std::string_view label, std::string_view axis,
                                              const std::vector<double>& values, const std::filesystem::path& out_dir)
{
    ensure_directory(out_dir);
    std::vector<std::filesystem::path> written;
    std::string summary = summary_csv_header() + "\n";
    const bool single = axis.empty();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const std::string stem = single ? std::string(label) : std::string(label) + "_" + std::to_string(i);
        const auto path = out_dir / (stem + "_trace.csv");
        write_trace_csv(path, traces[i]);
        written.push_back(path);
        summary += summary_csv_row(stem, single ? "none" : axis,
                                   single ? std::nullopt : std::optional<double>(values[i]),
                                   summarize(traces[i], runs[i]));
        summary += '\n';
    }
    const auto summary_path = out_dir / (std::string(label) + "_summary.csv");
    write_text(summary_path, summary);
    written.push_back(summary_path);
    return written;
}

SimParams frozen_probe(const SimParams& params, double v_w, bool target_on)
{
    SimParams p = params;
    const double settle = 6.0 * params.core.ca_tau_ms;
    p.duration = params.dt * std::ceil((settle + kSummarySpanMs) / params.dt);
    p.plasticity.eta_up = 0.0;
    p.plasticity.eta_dn = 0.0;
    p.plasticity.tristability_enabled = false;
    p.plasticity.v_w_init = v_w;
    p.plasticity.theta_ca_low = 0.0;
    p.plasticity.theta_ca_high = 1.0;
    p.stimulus.input_start_ms = 0.0;
    p.stimulus.input_stop_ms = std::numeric_limits<double>::infinity();
    p.stimulus.target_on_ms = 0.0;
    p.stimulus.target_off_ms = target_on ? std::numeric_limits<double>::infinity() : 0.0;
    p.trace.record_weights = false;
    return p;
}

double probe_mean_calcium(const SimParams& p)
{
    const Trace trace = run(p);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : trace.rows) {
        if (r.t > p.duration - kSummarySpanMs) {
            sum += r.i_ca;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

} // namespace

const char* to_string(Preset preset)
{
    switch (preset) {
    case Preset::Fig5Forget: return "fig5_forget";
    case Preset::Fig5Retain: return "fig5_retain";
    case Preset::TristabilitySweep: return "tristability_sweep";
    case Preset::HysteresisSweep: return "hysteresis_sweep";
    }
    return "?";
}

std::optional<Preset> parse_preset(std::string_view name)
{
    for (Preset p : kPresets)
        if (name == to_string(p))
            return p;
    return std::nullopt;
}

std::span<const Preset> all_presets()
{
    return kPresets;
}

std::vector<SimParams> PresetPlan::runs() const
{
    if (!is_sweep()) {
        base.validate();
        return {base};
    }
    return sweep_params(base, axis, values);
}

PresetPlan preset_plan(Preset preset, const SimParams& base)
{
    switch (preset) {
    case Preset::Fig5Forget:
        return {preset, fig5_params(base, kSmallWindowFraction), {}, {}};
    case Preset::Fig5Retain:
        return {preset, fig5_params(base, kLargeWindowFraction), {}, {}};
    case Preset::TristabilitySweep:
        return {preset, tristability_params(base), "plasticity.drift_rate", {kDriftRates.begin(), kDriftRates.end()}};
    case Preset::HysteresisSweep: {
        std::vector<double> windows;
        for (double f : kHysteresisFractions)
            windows.push_back(f * base.plasticity.theta_ca_high);
        return {preset, fig5_params(base, kSmallWindowFraction), "plasticity.i_bh_window", windows};
    }
    }
    throw ConfigError("preset: unknown");
}

RunSummary summarize(const Trace& trace, const SimParams& params)
{
    RunSummary s;
    const double end = trace.rows.empty() ? 0.0 : trace.rows.back().t;
    s.target_off_ms = std::min(params.stimulus.target_off_ms, end);

    s.trained_i_syn = mean_i_syn(trace, s.target_off_ms - kSummarySpanMs, s.target_off_ms, true, false);
    s.final_i_syn = mean_i_syn(trace, end - kSummarySpanMs, end, false, true);
    if (s.trained_i_syn > 0.0)
        s.retention_ratio = s.final_i_syn / s.trained_i_syn;

    for (const auto& r : trace.rows) {
        if (r.t >= s.target_off_ms && r.learn) {
            s.learn_reentry_ms = r.t;
            break;
        }
    }

    s.stim_end_ms = active_until(target_source(params), end);
    for (const auto& src : input_sources(params))
        s.stim_end_ms = std::max(s.stim_end_ms, active_until(src, end));

    if (!trace.has_weights || trace.rows.empty() || trace.rows.front().v_w.empty())
        return s;

    const auto& last = trace.rows.back().v_w;
    s.final_v_w = last.front();
    for (const auto& r : trace.rows) {
        if (r.t >= s.stim_end_ms) {
            s.v_w_at_stim_end = r.v_w.front();
            break;
        }
    }

    const bool crystallized = std::all_of(last.begin(), last.end(),
                                          [&](double v) { return v == attractor_of(v, params.plasticity); });
    if (!crystallized)
        return s;
    std::size_t settled = trace.rows.size() - 1;
    while (settled > 0 && trace.rows[settled - 1].v_w == last)
        --settled;
    s.time_to_attractor_ms = std::max(0.0, trace.rows[settled].t - s.stim_end_ms);
    return s;
}

std::string summary_csv_header()
{
    return "run,axis,value,trained_i_syn_nA,final_i_syn_nA,retention_ratio,learn_reentry_ms,"
           "stim_end_ms,v_w_stim_end,final_v_w,time_to_attractor_ms";
}

std::string summary_csv_row(std::string_view run_label, std::string_view axis, std::optional<double> value,
                            const RunSummary& s)
{
    std::string row;
    row += run_label;
    row += ',';
    row += axis;
    row += ',' + optional_cell(value, "n/a");
    row += ',' + format_csv_number(s.trained_i_syn);
    row += ',' + format_csv_number(s.final_i_syn);
    row += ',' + optional_cell(s.retention_ratio, "n/a");
    row += ',' + optional_cell(s.learn_reentry_ms, "never");
    row += ',' + format_csv_number(s.stim_end_ms);
    row += ',' + optional_cell(s.v_w_at_stim_end, "n/a");
    row += ',' + optional_cell(s.final_v_w, "n/a");
    row += ',' + optional_cell(s.time_to_attractor_ms, s.final_v_w ? "never" : "n/a");
    return row;
}

std::vector<std::filesystem::path> run_preset(Preset preset, const std::filesystem::path& out_dir,
                                              const SimParams& base)
{
    return run_plan(preset_plan(preset, base), out_dir);
}

std::vector<std::filesystem::path> run_plan(const PresetPlan& plan, const std::filesystem::path& out_dir)
{
    const auto runs = plan.runs();
    std::vector<Trace> traces;
    if (plan.is_sweep())
        traces = sweep(plan.base, plan.axis, plan.values);
    else
        traces.push_back(run(runs.front()));
    return write_runs(runs, traces, to_string(plan.preset), plan.axis, plan.values, out_dir);
}

std::vector<std::filesystem::path> run_sweep(const SimParams& base, std::string_view axis,
                                             std::span<const double> values, const std::filesystem::path& out_dir,
                                             std::string_view label)
{
    const auto runs = sweep_params(base, axis, values);
    const auto traces = sweep(base, axis, values);
    return write_runs(runs, traces, label, axis, {values.begin(), values.end()}, out_dir);
}

CalciumProbes probe_calcium(const SimParams& params)
{
    params.validate();
    const double v_mid = params.plasticity.v_dd / 2.0;
    const double v_top = params.plasticity.v_dd;

    CalciumProbes probes;
    probes.target_on_zero = probe_mean_calcium(frozen_probe(params, 0.0, true));
    probes.target_on_mid = probe_mean_calcium(frozen_probe(params, v_mid, true));
    probes.target_on_trained = probe_mean_calcium(frozen_probe(params, v_top, true));
    probes.target_off_mid = probe_mean_calcium(frozen_probe(params, v_mid, false));
    probes.target_off_trained = probe_mean_calcium(frozen_probe(params, v_top, false));

    SimParams quiet = frozen_probe(params, 0.0, false);
    quiet.stimulus.input_rate_hz = 0.0;
    probes.quiescent = probe_mean_calcium(quiet);
    return probes;
}

CaThresholds calibrate_ca_thresholds(const SimParams& params)
{
    CaThresholds out;
    out.probes = probe_calcium(params);
    const auto& pr = out.probes;

    out.theta_ca_high = pr.target_off_trained / kTargetOffFraction;
    out.theta_ca_low = kLowThresholdFraction * std::min(pr.target_on_zero, pr.target_off_mid);

    std::vector<std::string> problems;
    if (!(pr.target_off_trained > 0.0))
        problems.push_back("trained weights without target do not make the neuron fire; raise plasticity.i_wb "
                           "or neuron.input_gain");
    if (!(pr.target_on_trained > out.theta_ca_high))
        problems.push_back("trained weights with target do not lift calcium above the learning region; raise "
                           "stimulus.target_weight");
    if (!(pr.target_on_zero < out.theta_ca_high))
        problems.push_back("the target alone already saturates calcium, learning could never start; lower "
                           "stimulus.target_weight");
    if (!(pr.quiescent < out.theta_ca_low))
        problems.push_back("mid weights without target leave the neuron silent; raise plasticity.i_wb");
    if (!problems.empty()) {
        std::string msg = "calcium calibration failed:";
        for (const auto& p : problems)
            msg += "\n  - " + p;
        throw CalibrationError(msg);
    }
    return out;
}

std::string calibration_config_text(const CaThresholds& t)
{
    const auto& p = t.probes;
    std::string out = "# calibrated calcium thresholds (nA)\n";
    out += "# probe means: target_on_zero=" + format_csv_number(p.target_on_zero) +
           " target_on_mid=" + format_csv_number(p.target_on_mid) +
           " target_on_trained=" + format_csv_number(p.target_on_trained) + "\n";
    out += "#              target_off_mid=" + format_csv_number(p.target_off_mid) +
           " target_off_trained=" + format_csv_number(p.target_off_trained) +
           " quiescent=" + format_csv_number(p.quiescent) + "\n";
    out += "plasticity.theta_ca_low = " + format_csv_number(t.theta_ca_low) + "\n";
    out += "plasticity.theta_ca_high = " + format_csv_number(t.theta_ca_high) + "\n";
    return out;
}

} // namespace rowsim
