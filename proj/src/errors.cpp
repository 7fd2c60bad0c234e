#include "rowsim/errors.hpp"

namespace rowsim {

namespace {

std::string join(const std::vector<std::string>& issues)
{
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty())
            out += "; ";
        out += issue;
    }
    return out.empty() ? std::string("invalid configuration") : out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues))
{
}

} // namespace rowsim
