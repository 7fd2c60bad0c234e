#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rowsim/simulation.hpp"

namespace rowsim {

/// Column header, e.g. `t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike`
/// followed by `v_w_0..v_w_{N-1}` when weights are recorded.
std::string trace_csv_header(bool with_weights, std::size_t n_synapses);

/// Floats use 9 significant digits; flags are written as 0/1.
std::string format_csv_number(double value);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

/// Parses a CSV produced by write_trace_csv. Only the sampled rows are
/// restored; spike counters stay empty. Throws ConfigError on schema problems
/// and IoError when the file cannot be read.
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv(const std::filesystem::path& path);

} // namespace rowsim
