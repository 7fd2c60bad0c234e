#include "rowsim/params.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "rowsim/errors.hpp"

namespace rowsim {

namespace {

// Step counts are derived from ratios of user-supplied doubles; treat anything
// within this relative distance of an integer as that integer.
constexpr double kRatioTolerance = 1e-9;

bool is_integer_ratio(double num, double den)
{
    const double r = num / den;
    return std::abs(r - std::round(r)) <= kRatioTolerance * std::max(1.0, std::abs(r));
}

template <typename T>
std::string issue(std::string_view key, std::string_view rule, T value)
{
    std::ostringstream os;
    os << key << ": " << rule << ", got " << value;
    return os.str();
}

#define ROWSIM_FIELD(key_text, member) \
    ParamField { key_text, [](SimParams& p) -> FieldRef { return &p.member; } }

const std::array kFields = {
    ROWSIM_FIELD("dt", dt),
    ROWSIM_FIELD("duration", duration),
    ROWSIM_FIELD("n_synapses", n_synapses),
    ROWSIM_FIELD("rng_seed", rng_seed),
    ROWSIM_FIELD("core.syn_tau_ms", core.syn_tau_ms),
    ROWSIM_FIELD("core.syn_gain", core.syn_gain),
    ROWSIM_FIELD("core.target_tau_ms", core.target_tau_ms),
    ROWSIM_FIELD("core.target_gain", core.target_gain),
    ROWSIM_FIELD("core.ca_tau_ms", core.ca_tau_ms),
    ROWSIM_FIELD("core.ca_jump_nA", core.ca_jump_nA),
    ROWSIM_FIELD("neuron.threshold", neuron.threshold),
    ROWSIM_FIELD("neuron.reset", neuron.reset),
    ROWSIM_FIELD("neuron.tau_m_ms", neuron.tau_m_ms),
    ROWSIM_FIELD("neuron.input_gain", neuron.input_gain),
    ROWSIM_FIELD("neuron.t_refr_ms", neuron.t_refr_ms),
    ROWSIM_FIELD("plasticity.v_dd", plasticity.v_dd),
    ROWSIM_FIELD("plasticity.v_thl", plasticity.v_thl),
    ROWSIM_FIELD("plasticity.v_thh", plasticity.v_thh),
    ROWSIM_FIELD("plasticity.i_0", plasticity.i_0),
    ROWSIM_FIELD("plasticity.i_wb", plasticity.i_wb),
    ROWSIM_FIELD("plasticity.drift_rate", plasticity.drift_rate),
    ROWSIM_FIELD("plasticity.tristability_enabled", plasticity.tristability_enabled),
    ROWSIM_FIELD("plasticity.eta_up", plasticity.eta_up),
    ROWSIM_FIELD("plasticity.eta_dn", plasticity.eta_dn),
    ROWSIM_FIELD("plasticity.delta_deadband", plasticity.delta_deadband),
    ROWSIM_FIELD("plasticity.i_bh_window", plasticity.i_bh_window),
    ROWSIM_FIELD("plasticity.theta_ca_low", plasticity.theta_ca_low),
    ROWSIM_FIELD("plasticity.theta_ca_high", plasticity.theta_ca_high),
    ROWSIM_FIELD("plasticity.v_w_init", plasticity.v_w_init),
    ROWSIM_FIELD("stimulus.input_kind", stimulus.input_kind),
    ROWSIM_FIELD("stimulus.input_rate_hz", stimulus.input_rate_hz),
    ROWSIM_FIELD("stimulus.input_start_ms", stimulus.input_start_ms),
    ROWSIM_FIELD("stimulus.input_stop_ms", stimulus.input_stop_ms),
    ROWSIM_FIELD("stimulus.input_phase_step_ms", stimulus.input_phase_step_ms),
    ROWSIM_FIELD("stimulus.target_kind", stimulus.target_kind),
    ROWSIM_FIELD("stimulus.target_rate_hz", stimulus.target_rate_hz),
    ROWSIM_FIELD("stimulus.target_weight", stimulus.target_weight),
    ROWSIM_FIELD("stimulus.target_on_ms", stimulus.target_on_ms),
    ROWSIM_FIELD("stimulus.target_off_ms", stimulus.target_off_ms),
    ROWSIM_FIELD("trace.sample_interval_ms", trace.sample_interval_ms),
    ROWSIM_FIELD("trace.record_weights", trace.record_weights),
};

#undef ROWSIM_FIELD

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_bool(std::string_view text, bool& out)
{
    if (text == "1" || text == "true" || text == "yes" || text == "on") {
        out = true;
        return true;
    }
    if (text == "0" || text == "false" || text == "no" || text == "off") {
        out = false;
        return true;
    }
    return false;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::span<const ParamField> param_fields()
{
    return kFields;
}

const ParamField* find_param(std::string_view key)
{
    const auto it = std::find_if(kFields.begin(), kFields.end(), [&](const ParamField& f) { return f.key == key; });
    return it == kFields.end() ? nullptr : &*it;
}

void set_param(SimParams& params, std::string_view key, std::string_view value)
{
    const ParamField* field = find_param(key);
    if (!field)
        throw ConfigError(std::string(key) + ": unknown key");
    value = trim(value);

    const bool ok = std::visit(
        [&](auto* target) -> bool {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, bool>) {
                return parse_bool(value, *target);
            } else if constexpr (std::is_same_v<T, SpikeKind>) {
                const auto kind = parse_spike_kind(value);
                if (kind)
                    *target = *kind;
                return kind.has_value();
            } else {
                return parse_number(value, *target);
            }
        },
        field->ref(params));
    if (!ok)
        throw ConfigError(std::string(key) + ": cannot parse value '" + std::string(value) + "'");
}

void set_numeric_param(SimParams& params, std::string_view key, double value)
{
    const ParamField* field = find_param(key);
    if (!field)
        throw ConfigError(std::string(key) + ": unknown key");
    std::visit(
        [&](auto* target) {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, double>) {
                *target = value;
            } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::uint64_t>) {
                if (value != std::floor(value) || (std::is_same_v<T, std::uint64_t> && value < 0.0))
                    throw ConfigError(issue(key, "must be an integer", value));
                *target = static_cast<T>(value);
            } else {
                throw ConfigError(std::string(key) + ": not a numeric parameter");
            }
        },
        field->ref(params));
}

std::string get_param(const SimParams& params, std::string_view key)
{
    const ParamField* field = find_param(key);
    if (!field)
        throw ConfigError(std::string(key) + ": unknown key");
    // The accessors only hand out pointers; reading through a copy keeps this const.
    SimParams copy = params;
    return std::visit(
        [](auto* v) -> std::string {
            using T = std::remove_pointer_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>)
                return *v ? "true" : "false";
            else if constexpr (std::is_same_v<T, SpikeKind>)
                return to_string(*v);
            else if constexpr (std::is_same_v<T, double>)
                return format_double(*v);
            else
                return std::to_string(*v);
        },
        field->ref(copy));
}

std::vector<std::string> SimParams::violations() const
{
    std::vector<std::string> out;

    if (!(dt > 0.0))
        out.push_back(issue("dt", "must be > 0", dt));
    if (!(duration > 0.0) || !std::isfinite(duration))
        out.push_back(issue("duration", "must be finite and > 0", duration));
    if (n_synapses < 1)
        out.push_back(issue("n_synapses", "must be >= 1", n_synapses));

    const std::array<std::pair<std::string_view, double>, 3> taus = {{
        {"core.syn_tau_ms", core.syn_tau_ms},
        {"core.target_tau_ms", core.target_tau_ms},
        {"core.ca_tau_ms", core.ca_tau_ms},
    }};
    for (const auto& [key, tau] : taus) {
        if (!(tau > 0.0))
            out.push_back(issue(key, "must be > 0", tau));
        else if (dt > 0.0 && dt > tau / 10.0)
            out.push_back(issue("dt", std::string("must be <= ") + std::string(key) + "/10 = " +
                                          format_double(tau / 10.0),
                                dt));
    }
    if (!(core.syn_gain >= 0.0))
        out.push_back(issue("core.syn_gain", "must be >= 0", core.syn_gain));
    if (!(core.target_gain >= 0.0))
        out.push_back(issue("core.target_gain", "must be >= 0", core.target_gain));
    if (!(core.ca_jump_nA >= 0.0))
        out.push_back(issue("core.ca_jump_nA", "must be >= 0", core.ca_jump_nA));

    if (!(neuron.threshold > neuron.reset))
        out.push_back(issue("neuron.threshold", "must be > neuron.reset", neuron.threshold));
    if (!(neuron.tau_m_ms > 0.0))
        out.push_back(issue("neuron.tau_m_ms", "must be > 0", neuron.tau_m_ms));
    if (!(neuron.input_gain >= 0.0))
        out.push_back(issue("neuron.input_gain", "must be >= 0", neuron.input_gain));
    if (!(neuron.t_refr_ms >= 0.0))
        out.push_back(issue("neuron.t_refr_ms", "must be >= 0", neuron.t_refr_ms));

    plasticity.validate(out);

    if (!(stimulus.input_rate_hz >= 0.0))
        out.push_back(issue("stimulus.input_rate_hz", "must be >= 0", stimulus.input_rate_hz));
    if (!(stimulus.input_start_ms <= stimulus.input_stop_ms))
        out.push_back(issue("stimulus.input_stop_ms", "must be >= stimulus.input_start_ms", stimulus.input_stop_ms));
    if (!std::isfinite(stimulus.input_phase_step_ms) || stimulus.input_phase_step_ms < 0.0)
        out.push_back(issue("stimulus.input_phase_step_ms", "must be finite and >= 0", stimulus.input_phase_step_ms));
    if (!(stimulus.target_rate_hz >= 0.0))
        out.push_back(issue("stimulus.target_rate_hz", "must be >= 0", stimulus.target_rate_hz));
    if (!(stimulus.target_weight >= 0.0))
        out.push_back(issue("stimulus.target_weight", "must be >= 0", stimulus.target_weight));
    if (!(stimulus.target_on_ms <= stimulus.target_off_ms))
        out.push_back(issue("stimulus.target_off_ms", "must be >= stimulus.target_on_ms", stimulus.target_off_ms));

    if (!(trace.sample_interval_ms > 0.0))
        out.push_back(issue("trace.sample_interval_ms", "must be > 0", trace.sample_interval_ms));
    else if (dt > 0.0 && !is_integer_ratio(trace.sample_interval_ms, dt))
        out.push_back(issue("trace.sample_interval_ms", "must be a whole multiple of dt", trace.sample_interval_ms));
    if (dt > 0.0 && duration > 0.0 && !is_integer_ratio(duration, dt))
        out.push_back(issue("duration", "must be a whole multiple of dt", duration));

    return out;
}

void SimParams::validate() const
{
    auto issues = violations();
    if (!issues.empty())
        throw ConfigError(std::move(issues));
}

std::int64_t SimParams::step_count() const
{
    return std::llround(duration / dt);
}

std::int64_t SimParams::steps_per_sample() const
{
    return std::max<std::int64_t>(1, std::llround(trace.sample_interval_ms / dt));
}

bool SimParams::operator==(const SimParams& other) const
{
    for (const auto& field : kFields)
        if (get_param(*this, field.key) != get_param(other, field.key))
            return false;
    return true;
}

} // namespace rowsim
