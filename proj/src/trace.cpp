#include "degedit/trace.hpp"

namespace degedit {

auto format_trace_line(const TraceEntry& entry) -> std::string
{
    std::string line = "rule " + entry.rule + " site";
    for (auto v : entry.site)
        line += " " + std::to_string(v);
    if (! entry.detail.empty())
        line += " " + entry.detail;
    return line;
}

auto format_trace(const std::vector<TraceEntry>& trace) -> std::string
{
    std::string out;
    for (const auto& entry : trace)
        out += format_trace_line(entry) + "\n";
    return out;
}

} // namespace degedit
