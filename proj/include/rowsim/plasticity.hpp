#pragma once

#include <string>
#include <vector>

namespace rowsim {

struct PlasticityParams {
    double v_dd = 1.8;  // model-volts
    double v_thl = 0.6; // lower band edge, v_dd / 3
    double v_thh = 1.2; // upper band edge, 2 v_dd / 3
    double i_0 = 0.0005; // leakage current of the LOW level (nA)
    double i_wb = 0.01;  // MID level; HIGH is 2 * i_wb (nA)
    double drift_rate = 0.00025; // tristability slew toward the attractor (model-volts / ms)
    bool tristability_enabled = true;
    double eta_up = 0.1; // model-volts per pre spike per nA of error
    double eta_dn = 0.1;
    double delta_deadband = 0.0; // nA
    double i_bh_window = 0.258;  // hysteresis width of both calcium comparators (nA), 40% of theta_ca_high
    double theta_ca_low = 0.1353; // nA; calibrated, see calibrate_ca_thresholds
    double theta_ca_high = 0.6449; // nA
    double v_w_init = 0.0;       // initial internal weight of every synapse

    // Appends one message per violated invariant.
    void validate(std::vector<std::string>& issues) const;
};

enum class WeightLevel { Low, Mid, High };

const char* to_string(WeightLevel level);

/// Band of v_w. Exact boundary values belong to the upper band.
WeightLevel level_of(double v_w, const PlasticityParams& params);

/// Stable state the tristability amplifiers drive v_w toward: 0, v_dd / 2 or v_dd.
double attractor_of(double v_w, const PlasticityParams& params);

struct SynapseState {
    double v_w = 0.0;
    WeightLevel level = WeightLevel::Low;

    static SynapseState with_weight(double v_w, const PlasticityParams& params);
};

// Broadcast weight-change magnitudes. At most one of the two is nonzero.
struct DeltaSignals {
    double up_magnitude = 0.0;
    double dn_magnitude = 0.0;

    bool operator==(const DeltaSignals&) const = default;
};

/// Error between the target and weighted synaptic currents, split into
/// potentiation and depression magnitudes. Errors within the deadband are
/// dropped.
DeltaSignals delta_rule(double i_target, double i_syn, const PlasticityParams& params);

/// Applied once per pre-synaptic spike. Leaves v_w untouched when learning is
/// gated off; otherwise moves it by eta_up * up - eta_dn * dn, clamped to [0, v_dd].
[[nodiscard]] SynapseState weight_update_on_pre(SynapseState syn, const DeltaSignals& sig, bool learn,
                                                const PlasticityParams& params);

/// Constant-slew relaxation of v_w toward its attractor over `dt` ms. Lands
/// exactly on the attractor instead of overshooting it.
[[nodiscard]] SynapseState tristate_drift(SynapseState syn, double dt, const PlasticityParams& params);

/// Effective synaptic current of the discretized weight: i_0, i_wb or 2 i_wb.
/// Refreshes `syn.level`.
double discretize_weight(SynapseState& syn, const PlasticityParams& params);

/// Hysteretic current comparator (hWTA). Switches high once the input exceeds
/// `threshold` and falls back only when it drops below `threshold - window`.
struct HystereticComparatorState {
    bool winner_high = false;
    double threshold = 0.0;
    double window = 0.0;

    double switch_up_level() const { return threshold; }
    double switch_down_level() const { return threshold - window; }
};

[[nodiscard]] HystereticComparatorState hyst_compare(HystereticComparatorState cmp, double input);

// Stop-learning logic: learning is enabled while calcium is inside the region
// bounded by the two comparators.
struct LearnGateState {
    HystereticComparatorState low_cmp;
    HystereticComparatorState high_cmp;
    bool learn = false;

    static LearnGateState from_params(const PlasticityParams& params);
};

[[nodiscard]] LearnGateState learn_gate_update(LearnGateState gate, double i_ca);

} // namespace rowsim
