#pragma once

#include "rowsim/dpi.hpp"

namespace rowsim {

// Leaky integrate-and-fire soma constants.
struct NeuronParams {
    double threshold = 1.0;  // model-volts
    double reset = 0.0;      // model-volts
    double tau_m_ms = 10.0;  // membrane time constant, g_leak = 1 / tau_m
    double input_gain = 0.4; // k: model-volts per ms per nA
    double t_refr_ms = 2.0;

    double g_leak() const { return 1.0 / tau_m_ms; }
};

struct NeuronState {
    double membrane = 0.0;
    double threshold = 1.0;
    double reset = 0.0;
    double refractory_remaining = 0.0; // ms
    DpiState i_syn_dpi;
    DpiState i_target_dpi;
    DpiState i_ca_dpi;

    static NeuronState at_rest(const NeuronParams& params, DpiState syn, DpiState target, DpiState calcium);
};

struct NeuronStepResult {
    NeuronState state;
    bool spiked = false;
};

/// Advances the soma by `dt` ms with input current `i_in` held constant over the
/// step. The leaky membrane dV/dt = -g_leak (V - reset) + k i_in is integrated
/// in closed form; crossing the threshold emits a spike, resets the membrane and
/// starts the absolute refractory period.
[[nodiscard]] NeuronStepResult neuron_step(NeuronState state, double i_in, double dt, const NeuronParams& params);

/// Decays the calcium trace and applies its fixed jump when the soma spiked.
[[nodiscard]] NeuronState calcium_update(NeuronState state, bool post_spiked, double dt);

} // namespace rowsim
