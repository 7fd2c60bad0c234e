#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rowsim/neuron.hpp"
#include "rowsim/plasticity.hpp"
#include "rowsim/spike_source.hpp"

namespace rowsim {

// Time constants and gains of the three DPI pathways.
struct CoreParams {
    double syn_tau_ms = 50.0;
    double syn_gain = 1.0;    // nA of jump per nA of discretized weight
    double target_tau_ms = 10.0;
    double target_gain = 1.0;
    double ca_tau_ms = 500.0;
    double ca_jump_nA = 0.005; // J_ca
};

struct StimulusParams {
    SpikeKind input_kind = SpikeKind::Regular;
    double input_rate_hz = 25.0;
    double input_start_ms = 0.0;
    double input_stop_ms = std::numeric_limits<double>::infinity();
    double input_phase_step_ms = 0.0; // phase of synapse i is i * step
    SpikeKind target_kind = SpikeKind::Regular;
    double target_rate_hz = 1000.0;
    double target_weight = 0.12; // fixed, non-plastic
    double target_on_ms = 0.0;
    double target_off_ms = 10000.0;
};

struct TraceParams {
    double sample_interval_ms = 1.0;
    bool record_weights = false;
};

struct SimParams {
    double dt = 0.05;          // ms
    double duration = 20000.0; // ms
    std::int64_t n_synapses = 40;
    std::uint64_t rng_seed = 1;
    CoreParams core;
    NeuronParams neuron;
    PlasticityParams plasticity;
    StimulusParams stimulus;
    TraceParams trace;

    /// Every invariant violation, each naming its key. Empty when valid.
    std::vector<std::string> violations() const;

    /// Throws ConfigError listing all violations.
    void validate() const;

    std::int64_t step_count() const;
    std::int64_t steps_per_sample() const;

    bool operator==(const SimParams&) const;
};

/// Mutable view of one scalar field of SimParams.
using FieldRef = std::variant<double*, std::int64_t*, std::uint64_t*, bool*, SpikeKind*>;

struct ParamField {
    std::string_view key;
    std::function<FieldRef(SimParams&)> ref;
};

/// All configurable keys, in documentation order.
std::span<const ParamField> param_fields();

const ParamField* find_param(std::string_view key);

/// Parses `value` into the field named by `key`. Throws ConfigError naming the
/// key on an unknown key or malformed value.
void set_param(SimParams& params, std::string_view key, std::string_view value);

/// Numeric assignment used by sweeps; rejects non-numeric fields.
void set_numeric_param(SimParams& params, std::string_view key, double value);

/// Current value rendered as text, in the same syntax set_param accepts.
std::string get_param(const SimParams& params, std::string_view key);

} // namespace rowsim
