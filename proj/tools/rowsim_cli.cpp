// rowsim: command-line front end for the neuron-row simulator.
//
//   rowsim run --preset <name> --out <dir> [--seed N] [--config <file>] [--set key=value ...]
//   rowsim sweep --axis <key> --values a,b,c --out <dir> [--preset <name>] [--seed N] [--config <file>] [--set ...]
//   rowsim calibrate --out <file> [--config <file>] [--set ...]
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>

#include "rowsim/config.hpp"
#include "rowsim/errors.hpp"
#include "rowsim/experiments.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
    std::string config;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& cmd, CommonOptions& opts, bool with_seed)
{
    cmd.add_option("--config", opts.config, "key = value config file layered over the defaults");
    cmd.add_option("--set", opts.sets, "override a single key (key=value), applied last")->take_all();
    if (with_seed)
        cmd.add_option("--seed", opts.seed, "rng seed");
}

// defaults -> config file -> preset -> --set / --seed
rowsim::SimParams resolve_base(const CommonOptions& opts)
{
    rowsim::SimParams p;
    if (!opts.config.empty())
        p = rowsim::load_config(opts.config, p);
    return p;
}

rowsim::SimParams apply_late(rowsim::SimParams p, const CommonOptions& opts)
{
    rowsim::apply_overrides(p, opts.sets);
    if (opts.seed)
        p.rng_seed = *opts.seed;
    p.validate();
    return p;
}

rowsim::Preset require_preset(const std::string& name)
{
    const auto preset = rowsim::parse_preset(name);
    if (!preset) {
        std::string known;
        for (auto p : rowsim::all_presets())
            known += std::string(known.empty() ? "" : ", ") + rowsim::to_string(p);
        throw rowsim::ConfigError("--preset: unknown preset '" + name + "' (known: " + known + ")");
    }
    return *preset;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos)
            end = text.size();
        const std::string_view cell(text.data() + start, end - start);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size())
            throw rowsim::ConfigError("--values: cannot parse '" + std::string(cell) + "'");
        values.push_back(v);
        start = end + 1;
    }
    return values;
}

void print_paths(const std::vector<std::filesystem::path>& paths)
{
    for (const auto& p : paths)
        std::cout << p.string() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Behavioral simulator of a plastic spiking neuron row with tristate weights and stop-learning"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string run_preset;
    std::string run_out;
    auto* run_cmd = app.add_subcommand("run", "run a named experiment preset");
    run_cmd->add_option("--preset", run_preset, "fig5_forget | fig5_retain | tristability_sweep | hysteresis_sweep")
        ->required();
    run_cmd->add_option("--out", run_out, "output directory")->required();
    add_common(*run_cmd, run_opts, true);

    CommonOptions sweep_opts;
    std::string sweep_axis;
    std::string sweep_values;
    std::string sweep_out;
    std::string sweep_preset;
    auto* sweep_cmd = app.add_subcommand("sweep", "one run per value of a scalar parameter");
    sweep_cmd->add_option("--axis", sweep_axis, "parameter key, e.g. plasticity.drift_rate")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory")->required();
    sweep_cmd->add_option("--preset", sweep_preset, "preset providing the base protocol");
    add_common(*sweep_cmd, sweep_opts, true);

    CommonOptions cal_opts;
    std::string cal_out;
    auto* cal_cmd = app.add_subcommand("calibrate", "derive calcium thresholds from probe runs");
    cal_cmd->add_option("--out", cal_out, "config file to write")->required();
    add_common(*cal_cmd, cal_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run_cmd) {
            const auto preset = require_preset(run_preset);
            auto plan = rowsim::preset_plan(preset, resolve_base(run_opts));
            plan.base = apply_late(plan.base, run_opts);
            print_paths(rowsim::run_plan(plan, run_out));
        } else if (*sweep_cmd) {
            rowsim::SimParams base = resolve_base(sweep_opts);
            if (!sweep_preset.empty())
                base = rowsim::preset_plan(require_preset(sweep_preset), base).base;
            base = apply_late(base, sweep_opts);
            const auto values = parse_values(sweep_values);
            const std::string label = sweep_preset.empty() ? "sweep" : sweep_preset;
            print_paths(rowsim::run_sweep(base, sweep_axis, values, sweep_out, label));
        } else if (*cal_cmd) {
            const auto params = apply_late(resolve_base(cal_opts), cal_opts);
            const auto cal = rowsim::calibrate_ca_thresholds(params);
            std::ofstream out(cal_out, std::ios::binary);
            if (!out)
                throw rowsim::IoError("cannot open '" + cal_out + "' for writing");
            out << rowsim::calibration_config_text(cal);
            out.flush();
            if (!out)
                throw rowsim::IoError("failed writing '" + cal_out + "'");
            std::cout << cal_out << '\n';
        }
    } catch (const rowsim::ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& issue : e.issues())
            std::cerr << "  " << issue << '\n';
        return kExitConfig;
    } catch (const rowsim::CalibrationError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const rowsim::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
