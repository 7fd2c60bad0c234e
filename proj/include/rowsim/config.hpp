#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "rowsim/params.hpp"

namespace rowsim {

// Flat UTF-8 `key = value` files. Keys are SimParams field paths such as
// `plasticity.i_wb`; `#` starts a comment; blank lines are ignored.

/// Applies the assignments in `text` on top of `base` and validates the result.
/// Throws ConfigError listing every malformed line (with its line number),
/// unknown key and invariant violation.
SimParams parse_config(std::string_view text, const SimParams& base = SimParams{},
                       std::string_view origin = "config");

/// Reads and parses a config file. Throws IoError when it cannot be read.
SimParams load_config(const std::filesystem::path& path, const SimParams& base = SimParams{});

/// Applies `key=value` overrides (as given on the command line) without validating.
void apply_overrides(SimParams& params, std::span<const std::string> assignments);

/// Renders every key in config syntax; parse_config(render_config(p)) == p.
std::string render_config(const SimParams& params);

} // namespace rowsim
