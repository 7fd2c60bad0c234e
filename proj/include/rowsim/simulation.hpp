#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rowsim/neuron.hpp"
#include "rowsim/params.hpp"
#include "rowsim/plasticity.hpp"
#include "rowsim/spike_source.hpp"

namespace rowsim {

// One sampled row of observables. `post_spike` is set when the soma fired at
// least once since the previous row.
struct TraceRecord {
    double t = 0.0; // ms
    double i_syn = 0.0;
    double i_target = 0.0;
    double i_ca = 0.0;
    bool learn = false;
    double membrane = 0.0;
    bool post_spike = false;
    std::vector<double> v_w; // empty unless weight recording is on

    bool operator==(const TraceRecord&) const = default;
};

struct SpikeCounts {
    std::int64_t generated = 0;
    std::int64_t delivered = 0;
};

struct Trace {
    std::vector<TraceRecord> rows;
    bool has_weights = false;
    std::size_t n_synapses = 0;
    std::vector<SpikeCounts> input_counts; // per plastic synapse
    SpikeCounts target_counts;
    std::int64_t post_spikes = 0;
    std::vector<double> final_v_w; // always recorded, independent of sampling
};

/// Stimulus built from SimParams::stimulus: one source per plastic synapse and
/// the target pathway.
std::vector<SpikeSource> input_sources(const SimParams& params);
SpikeSource target_source(const SimParams& params);

/// Fixed-step simulation of one neuron row: N plastic synapses feeding an input
/// DPI, a non-plastic target DPI, the soma, its calcium trace and the
/// stop-learning gate.
///
/// Each step of length dt, covering [t, t + dt):
///   1. input spikes: the synapse DPI jumps by the discretized weight and the
///      synapse applies its pre-synaptic weight update; target spikes jump the
///      target DPI by the fixed target weight
///   2. all DPIs decay over dt
///   3. the soma integrates i_syn + i_target
///   4. calcium decays and records a post spike
///   5. the learn gate compares calcium against its thresholds
///   6. the Delta rule refreshes the broadcast update signals
///   7. tristability drift on every synapse
///   8. a trace row is appended at every sample interval
class RowSimulation {
public:
    /// Throws ConfigError when params are invalid or the source count does not
    /// match n_synapses.
    RowSimulation(SimParams params, std::vector<SpikeSource> inputs, SpikeSource target);
    explicit RowSimulation(const SimParams& params);

    void step();
    Trace run();

    double time() const { return static_cast<double>(step_index_) * params_.dt; }
    std::int64_t step_index() const { return step_index_; }
    const NeuronState& neuron() const { return neuron_; }
    const LearnGateState& gate() const { return gate_; }
    const DeltaSignals& signals() const { return signals_; }
    std::span<const SynapseState> synapses() const { return synapses_; }
    const SimParams& params() const { return params_; }

private:
    TraceRecord sample() const;

    SimParams params_;
    std::vector<SpikeSource> inputs_;
    SpikeSource target_;
    std::vector<SpikeRng> input_rngs_;
    SpikeRng target_rng_;

    NeuronState neuron_;
    std::vector<SynapseState> synapses_;
    LearnGateState gate_;
    DeltaSignals signals_;
    std::int64_t step_index_ = 0;
    bool spiked_since_sample_ = false;

    std::vector<SpikeCounts> input_counts_;
    SpikeCounts target_counts_;
    std::int64_t post_spikes_ = 0;
};

/// Convenience wrapper: validates params, runs to completion.
Trace run(const SimParams& params);
Trace run(const SimParams& params, std::vector<SpikeSource> inputs, SpikeSource target);

/// Seed of sweep run `index`, derived from the base seed.
std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t index);

/// One independent run per value of `axis`, executed concurrently. Results are
/// ordered like `values`. Throws ConfigError for unknown or non-numeric axes and
/// for any value that yields invalid params.
std::vector<Trace> sweep(const SimParams& base, std::string_view axis, std::span<const double> values);

/// The fully resolved params of each sweep run, as `sweep` would use them.
std::vector<SimParams> sweep_params(const SimParams& base, std::string_view axis, std::span<const double> values);

} // namespace rowsim
