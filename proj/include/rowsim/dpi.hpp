#pragma once

namespace rowsim {

/// First-order behavioral model of a differential pair integrator: the output
/// current decays exponentially between input events and jumps by
/// `jump_gain * weight` on each event.
///
/// Units: current in nA, tau in ms, jump_gain in nA per unit weight.
struct DpiState {
    double current = 0.0;
    double tau = 1.0;
    double jump_gain = 1.0;

    /// Validated constructor; tau must be strictly positive and the gain
    /// non-negative. Throws ConfigError otherwise.
    static DpiState make(double tau_ms, double jump_gain, double initial_current = 0.0);
};

/// Exact closed-form decay over `dt` ms: current * exp(-dt / tau).
[[nodiscard]] DpiState dpi_decay(DpiState state, double dt);

/// Instantaneous additive jump of `jump_gain * weight`.
[[nodiscard]] DpiState dpi_on_spike(DpiState state, double weight);

} // namespace rowsim
