#include "rowsim/config.hpp"

#include <fstream>
#include <sstream>

#include "rowsim/errors.hpp"

namespace rowsim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace

SimParams parse_config(std::string_view text, const SimParams& base, std::string_view origin)
{
    SimParams params = base;
    std::vector<std::string> issues;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF")
            line.remove_prefix(3);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            issues.push_back(where + "expected 'key = value', got '" + std::string(line) + "'");
            continue;
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            issues.push_back(where + "expected 'key = value', got '" + std::string(line) + "'");
            continue;
        }
        try {
            set_param(params, key, value);
        } catch (const ConfigError& e) {
            for (const auto& msg : e.issues())
                issues.push_back(where + msg);
        }
    }

    for (auto& msg : params.violations())
        issues.push_back(std::move(msg));
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return params;
}

SimParams load_config(const std::filesystem::path& path, const SimParams& base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base, path.string());
}

void apply_overrides(SimParams& params, std::span<const std::string> assignments)
{
    std::vector<std::string> issues;
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            issues.push_back("--set " + a + ": expected key=value");
            continue;
        }
        try {
            set_param(params, trim(std::string_view(a).substr(0, eq)), std::string_view(a).substr(eq + 1));
        } catch (const ConfigError& e) {
            for (const auto& msg : e.issues())
                issues.push_back("--set " + msg);
        }
    }
    if (!issues.empty())
        throw ConfigError(std::move(issues));
}

std::string render_config(const SimParams& params)
{
    std::string out;
    for (const auto& field : param_fields()) {
        out += field.key;
        out += " = ";
        out += get_param(params, field.key);
        out += '\n';
    }
    return out;
}

} // namespace rowsim
