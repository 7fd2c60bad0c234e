#include "rowsim/dpi.hpp"

#include <cmath>
#include <string>

#include "rowsim/errors.hpp"

namespace rowsim {

DpiState DpiState::make(double tau_ms, double jump_gain, double initial_current)
{
    std::vector<std::string> issues;
    if (!(tau_ms > 0.0))
        issues.push_back("tau: must be > 0, got " + std::to_string(tau_ms));
    if (!(jump_gain >= 0.0))
        issues.push_back("jump_gain: must be >= 0, got " + std::to_string(jump_gain));
    if (!(initial_current >= 0.0))
        issues.push_back("current: must be >= 0, got " + std::to_string(initial_current));
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return DpiState{initial_current, tau_ms, jump_gain};
}

DpiState dpi_decay(DpiState state, double dt)
{
    state.current *= std::exp(-dt / state.tau);
    return state;
}

DpiState dpi_on_spike(DpiState state, double weight)
{
    state.current += state.jump_gain * weight;
    return state;
}

} // namespace rowsim
