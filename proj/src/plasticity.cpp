#include "rowsim/plasticity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rowsim {

namespace {

template <typename T>
std::string describe(const char* key, const char* rule, T value)
{
    std::ostringstream os;
    os << "plasticity." << key << ": " << rule << ", got " << value;
    return os.str();
}

} // namespace

void PlasticityParams::validate(std::vector<std::string>& issues) const
{
    if (!(v_dd > 0.0))
        issues.push_back(describe("v_dd", "must be > 0", v_dd));
    if (!(v_thl > 0.0 && v_thl < v_dd / 2.0))
        issues.push_back(describe("v_thl", "must satisfy 0 < v_thl < v_dd/2", v_thl));
    if (!(v_thh > v_dd / 2.0 && v_thh < v_dd))
        issues.push_back(describe("v_thh", "must satisfy v_dd/2 < v_thh < v_dd", v_thh));
    if (!(i_0 >= 0.0))
        issues.push_back(describe("i_0", "must be >= 0", i_0));
    if (!(i_wb >= 0.0 && i_0 < i_wb))
        issues.push_back(describe("i_wb", "must be >= 0 and > i_0", i_wb));
    if (!(drift_rate >= 0.0))
        issues.push_back(describe("drift_rate", "must be >= 0", drift_rate));
    if (!(eta_up >= 0.0))
        issues.push_back(describe("eta_up", "must be >= 0", eta_up));
    if (!(eta_dn >= 0.0))
        issues.push_back(describe("eta_dn", "must be >= 0", eta_dn));
    if (!(delta_deadband >= 0.0))
        issues.push_back(describe("delta_deadband", "must be >= 0", delta_deadband));
    if (!(i_bh_window >= 0.0))
        issues.push_back(describe("i_bh_window", "must be >= 0", i_bh_window));
    if (!(theta_ca_low >= 0.0))
        issues.push_back(describe("theta_ca_low", "must be >= 0", theta_ca_low));
    if (!(theta_ca_low < theta_ca_high))
        issues.push_back(describe("theta_ca_high", "must be > theta_ca_low", theta_ca_high));
    if (!(v_w_init >= 0.0 && v_w_init <= v_dd))
        issues.push_back(describe("v_w_init", "must lie in [0, v_dd]", v_w_init));
}

const char* to_string(WeightLevel level)
{
    switch (level) {
    case WeightLevel::Low: return "LOW";
    case WeightLevel::Mid: return "MID";
    case WeightLevel::High: return "HIGH";
    }
    return "?";
}

WeightLevel level_of(double v_w, const PlasticityParams& params)
{
    if (v_w >= params.v_thh)
        return WeightLevel::High;
    if (v_w >= params.v_thl)
        return WeightLevel::Mid;
    return WeightLevel::Low;
}

double attractor_of(double v_w, const PlasticityParams& params)
{
    switch (level_of(v_w, params)) {
    case WeightLevel::Low: return 0.0;
    case WeightLevel::Mid: return params.v_dd / 2.0;
    case WeightLevel::High: return params.v_dd;
    }
    return 0.0;
}

SynapseState SynapseState::with_weight(double v_w, const PlasticityParams& params)
{
    return SynapseState{v_w, level_of(v_w, params)};
}

DeltaSignals delta_rule(double i_target, double i_syn, const PlasticityParams& params)
{
    const double error = i_target - i_syn;
    if (std::abs(error) <= params.delta_deadband)
        return {};
    if (error > 0.0)
        return {error, 0.0};
    return {0.0, -error};
}

SynapseState weight_update_on_pre(SynapseState syn, const DeltaSignals& sig, bool learn,
                                  const PlasticityParams& params)
{
    if (!learn)
        return syn;
    const double v = syn.v_w + params.eta_up * sig.up_magnitude - params.eta_dn * sig.dn_magnitude;
    return SynapseState::with_weight(std::clamp(v, 0.0, params.v_dd), params);
}

SynapseState tristate_drift(SynapseState syn, double dt, const PlasticityParams& params)
{
    if (!params.tristability_enabled)
        return syn;
    const double target = attractor_of(syn.v_w, params);
    const double gap = target - syn.v_w;
    const double slew = params.drift_rate * dt;
    if (std::abs(gap) <= slew)
        return SynapseState::with_weight(target, params);
    return SynapseState::with_weight(syn.v_w + std::copysign(slew, gap), params);
}

double discretize_weight(SynapseState& syn, const PlasticityParams& params)
{
    syn.level = level_of(syn.v_w, params);
    switch (syn.level) {
    case WeightLevel::Low: return params.i_0;
    case WeightLevel::Mid: return params.i_wb;
    case WeightLevel::High: return 2.0 * params.i_wb;
    }
    return params.i_0;
}

HystereticComparatorState hyst_compare(HystereticComparatorState cmp, double input)
{
    if (!cmp.winner_high && input > cmp.switch_up_level())
        cmp.winner_high = true;
    else if (cmp.winner_high && input < cmp.switch_down_level())
        cmp.winner_high = false;
    return cmp;
}

LearnGateState LearnGateState::from_params(const PlasticityParams& params)
{
    LearnGateState gate;
    gate.low_cmp = {false, params.theta_ca_low, params.i_bh_window};
    gate.high_cmp = {false, params.theta_ca_high, params.i_bh_window};
    gate.learn = false;
    return gate;
}

LearnGateState learn_gate_update(LearnGateState gate, double i_ca)
{
    gate.low_cmp = hyst_compare(gate.low_cmp, i_ca);
    gate.high_cmp = hyst_compare(gate.high_cmp, i_ca);
    gate.learn = gate.low_cmp.winner_high && !gate.high_cmp.winner_high;
    return gate;
}

} // namespace rowsim
