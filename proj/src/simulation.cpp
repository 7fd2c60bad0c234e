#include "rowsim/simulation.hpp"

#include <future>

#include "rowsim/errors.hpp"

namespace rowsim {

namespace {

// Stream ids separating the target generator from the per-synapse generators.
constexpr std::uint64_t kTargetStream = 0xffff'ffff'ffff'ffffULL;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::vector<SpikeSource> input_sources(const SimParams& params)
{
    const auto& stim = params.stimulus;
    std::vector<SpikeSource> sources;
    sources.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, params.n_synapses)));
    for (std::int64_t i = 0; i < params.n_synapses; ++i) {
        sources.push_back(SpikeSource{stim.input_kind, stim.input_rate_hz, stim.input_start_ms, stim.input_stop_ms,
                                      static_cast<double>(i) * stim.input_phase_step_ms});
    }
    return sources;
}

SpikeSource target_source(const SimParams& params)
{
    const auto& stim = params.stimulus;
    return SpikeSource{stim.target_kind, stim.target_rate_hz, stim.target_on_ms, stim.target_off_ms, stim.target_on_ms};
}

RowSimulation::RowSimulation(SimParams params, std::vector<SpikeSource> inputs, SpikeSource target)
    : params_(std::move(params)), inputs_(std::move(inputs)), target_(target),
      target_rng_(params_.rng_seed, kTargetStream)
{
    params_.validate();
    if (static_cast<std::int64_t>(inputs_.size()) != params_.n_synapses)
        throw ConfigError("n_synapses: expected " + std::to_string(params_.n_synapses) + " input sources, got " +
                          std::to_string(inputs_.size()));

    input_rngs_.reserve(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i)
        input_rngs_.emplace_back(params_.rng_seed, i);

    const auto& core = params_.core;
    neuron_ = NeuronState::at_rest(params_.neuron, DpiState::make(core.syn_tau_ms, core.syn_gain),
                                   DpiState::make(core.target_tau_ms, core.target_gain),
                                   DpiState::make(core.ca_tau_ms, core.ca_jump_nA));
    synapses_.assign(inputs_.size(), SynapseState::with_weight(params_.plasticity.v_w_init, params_.plasticity));
    gate_ = LearnGateState::from_params(params_.plasticity);
    input_counts_.assign(inputs_.size(), SpikeCounts{});
}

RowSimulation::RowSimulation(const SimParams& params)
    : RowSimulation(params, input_sources(params), target_source(params))
{
}

void RowSimulation::step()
{
    const auto& plast = params_.plasticity;
    const double dt = params_.dt;
    const double t0 = static_cast<double>(step_index_) * dt;
    const double t1 = static_cast<double>(step_index_ + 1) * dt;

    // 1. deliver input and target spikes
    DpiState syn_dpi = neuron_.i_syn_dpi;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        const std::int64_t n = generate_spikes(inputs_[i], t0, t1, input_rngs_[i]);
        input_counts_[i].generated += n;
        if (n == 0)
            continue;
        const double weight = discretize_weight(synapses_[i], plast);
        syn_dpi = dpi_on_spike(syn_dpi, weight * static_cast<double>(n));
        input_counts_[i].delivered += n;
        for (std::int64_t k = 0; k < n; ++k)
            synapses_[i] = weight_update_on_pre(synapses_[i], signals_, gate_.learn, plast);
    }
    DpiState target_dpi = neuron_.i_target_dpi;
    const std::int64_t n_target = generate_spikes(target_, t0, t1, target_rng_);
    target_counts_.generated += n_target;
    if (n_target > 0) {
        target_dpi = dpi_on_spike(target_dpi, params_.stimulus.target_weight * static_cast<double>(n_target));
        target_counts_.delivered += n_target;
    }

    // 2. decay the input and target pathways; calcium decays in its own update
    neuron_.i_syn_dpi = dpi_decay(syn_dpi, dt);
    neuron_.i_target_dpi = dpi_decay(target_dpi, dt);
    const double i_syn = neuron_.i_syn_dpi.current;
    const double i_target = neuron_.i_target_dpi.current;

    // 3-4. soma and calcium
    auto [soma, spiked] = neuron_step(neuron_, i_syn + i_target, dt, params_.neuron);
    neuron_ = calcium_update(soma, spiked, dt);
    if (spiked) {
        ++post_spikes_;
        spiked_since_sample_ = true;
    }

    // 5-6. stop-learning gate and broadcast update signals
    gate_ = learn_gate_update(gate_, neuron_.i_ca_dpi.current);
    signals_ = delta_rule(i_target, i_syn, plast);

    // 7. tristability
    for (auto& syn : synapses_)
        syn = tristate_drift(syn, dt, plast);

    ++step_index_;
}

TraceRecord RowSimulation::sample() const
{
    TraceRecord rec;
    const std::int64_t sample_index = step_index_ / params_.steps_per_sample();
    rec.t = static_cast<double>(sample_index) * params_.trace.sample_interval_ms;
    rec.i_syn = neuron_.i_syn_dpi.current;
    rec.i_target = neuron_.i_target_dpi.current;
    rec.i_ca = neuron_.i_ca_dpi.current;
    rec.learn = gate_.learn;
    rec.membrane = neuron_.membrane;
    rec.post_spike = spiked_since_sample_;
    if (params_.trace.record_weights) {
        rec.v_w.reserve(synapses_.size());
        for (const auto& syn : synapses_)
            rec.v_w.push_back(syn.v_w);
    }
    return rec;
}

Trace RowSimulation::run()
{
    Trace trace;
    trace.has_weights = params_.trace.record_weights;
    trace.n_synapses = synapses_.size();

    const std::int64_t total = params_.step_count();
    const std::int64_t per_sample = params_.steps_per_sample();
    trace.rows.reserve(static_cast<std::size_t>(total / per_sample + 1));

    trace.rows.push_back(sample());
    while (step_index_ < total) {
        step();
        if (step_index_ % per_sample == 0) {
            trace.rows.push_back(sample());
            spiked_since_sample_ = false;
        }
    }

    trace.input_counts = input_counts_;
    trace.target_counts = target_counts_;
    trace.post_spikes = post_spikes_;
    trace.final_v_w.reserve(synapses_.size());
    for (const auto& syn : synapses_)
        trace.final_v_w.push_back(syn.v_w);
    return trace;
}

Trace run(const SimParams& params)
{
    return RowSimulation(params).run();
}

Trace run(const SimParams& params, std::vector<SpikeSource> inputs, SpikeSource target)
{
    return RowSimulation(params, std::move(inputs), target).run();
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t index)
{
    return splitmix64(base_seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

std::vector<SimParams> sweep_params(const SimParams& base, std::string_view axis, std::span<const double> values)
{
    if (!find_param(axis))
        throw ConfigError(std::string(axis) + ": unknown sweep axis");

    std::vector<SimParams> out;
    std::vector<std::string> issues;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SimParams p = base;
        set_numeric_param(p, axis, values[i]);
        p.rng_seed = sweep_seed(base.rng_seed, i);
        for (auto& msg : p.violations())
            issues.push_back("run " + std::to_string(i) + ": " + msg);
        out.push_back(std::move(p));
    }
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return out;
}

std::vector<Trace> sweep(const SimParams& base, std::string_view axis, std::span<const double> values)
{
    const auto runs = sweep_params(base, axis, values);

    std::vector<std::future<Trace>> pending;
    pending.reserve(runs.size());
    for (const auto& p : runs)
        pending.push_back(std::async(std::launch::async, [&p] { return run(p); }));

    std::vector<Trace> out;
    out.reserve(runs.size());
    for (auto& f : pending)
        out.push_back(f.get());
    return out;
}

} // namespace rowsim
