#include "rowsim/neuron.hpp"

#include <algorithm>
#include <cmath>

namespace rowsim {

namespace {

// Refractory timers are decremented by a floating dt; anything below this is
// rounding residue, not time left.
constexpr double kTimerEpsilonMs = 1e-9;

} // namespace

NeuronState NeuronState::at_rest(const NeuronParams& params, DpiState syn, DpiState target, DpiState calcium)
{
    NeuronState s;
    s.membrane = params.reset;
    s.threshold = params.threshold;
    s.reset = params.reset;
    s.refractory_remaining = 0.0;
    s.i_syn_dpi = syn;
    s.i_target_dpi = target;
    s.i_ca_dpi = calcium;
    return s;
}

NeuronStepResult neuron_step(NeuronState state, double i_in, double dt, const NeuronParams& params)
{
    if (state.refractory_remaining > 0.0) {
        state.membrane = state.reset;
        state.refractory_remaining -= dt;
        if (state.refractory_remaining < kTimerEpsilonMs)
            state.refractory_remaining = 0.0;
        return {state, false};
    }

    const double g = params.g_leak();
    const double v_inf = state.reset + params.input_gain * i_in / g;
    double v = v_inf + (state.membrane - v_inf) * std::exp(-g * dt);

    if (v >= state.threshold) {
        state.membrane = state.reset;
        state.refractory_remaining = params.t_refr_ms;
        return {state, true};
    }
    state.membrane = std::clamp(v, state.reset, state.threshold);
    return {state, false};
}

NeuronState calcium_update(NeuronState state, bool post_spiked, double dt)
{
    state.i_ca_dpi = dpi_decay(state.i_ca_dpi, dt);
    if (post_spiked)
        state.i_ca_dpi = dpi_on_spike(state.i_ca_dpi, 1.0);
    return state;
}

} // namespace rowsim
