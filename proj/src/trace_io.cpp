#include "rowsim/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "rowsim/errors.hpp"

namespace rowsim {

namespace {

constexpr std::string_view kBaseHeader = "t_ms,i_syn_nA,i_target_nA,i_ca_nA,learn,membrane_V,post_spike";
constexpr std::size_t kBaseColumns = 7;

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_cell(std::string_view cell, std::size_t line_no)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ConfigError("trace line " + std::to_string(line_no) + ": malformed number '" + std::string(cell) + "'");
    return v;
}

} // namespace

std::string trace_csv_header(bool with_weights, std::size_t n_synapses)
{
    std::string header(kBaseHeader);
    if (with_weights)
        for (std::size_t i = 0; i < n_synapses; ++i)
            header += ",v_w_" + std::to_string(i);
    return header;
}

std::string format_csv_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace)
{
    out << trace_csv_header(trace.has_weights, trace.n_synapses) << '\n';
    std::string line;
    for (const auto& r : trace.rows) {
        line.clear();
        line += format_csv_number(r.t);
        line += ',';
        line += format_csv_number(r.i_syn);
        line += ',';
        line += format_csv_number(r.i_target);
        line += ',';
        line += format_csv_number(r.i_ca);
        line += r.learn ? ",1," : ",0,";
        line += format_csv_number(r.membrane);
        line += r.post_spike ? ",1" : ",0";
        for (double v : r.v_w) {
            line += ',';
            line += format_csv_number(v);
        }
        line += '\n';
        out << line;
    }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_trace_csv(out, trace);
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

Trace read_trace_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("trace: empty input, missing header");
    const auto columns = split(line, ',');
    if (columns.size() < kBaseColumns || line.substr(0, kBaseHeader.size()) != kBaseHeader)
        throw ConfigError("trace: header must start with '" + std::string(kBaseHeader) + "'");

    Trace trace;
    trace.n_synapses = columns.size() - kBaseColumns;
    trace.has_weights = trace.n_synapses > 0;
    if (line != trace_csv_header(trace.has_weights, trace.n_synapses))
        throw ConfigError("trace: weight columns must be v_w_0..v_w_{N-1}");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != columns.size())
            throw ConfigError("trace line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns.size()) + " columns, got " + std::to_string(cells.size()));
        TraceRecord r;
        r.t = parse_cell(cells[0], line_no);
        r.i_syn = parse_cell(cells[1], line_no);
        r.i_target = parse_cell(cells[2], line_no);
        r.i_ca = parse_cell(cells[3], line_no);
        r.learn = parse_cell(cells[4], line_no) != 0.0;
        r.membrane = parse_cell(cells[5], line_no);
        r.post_spike = parse_cell(cells[6], line_no) != 0.0;
        for (std::size_t i = kBaseColumns; i < cells.size(); ++i)
            r.v_w.push_back(parse_cell(cells[i], line_no));
        trace.rows.push_back(std::move(r));
    }
    if (!trace.rows.empty())
        trace.final_v_w = trace.rows.back().v_w;
    return trace;
}

Trace read_trace_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return read_trace_csv(in);
}

} // namespace rowsim
