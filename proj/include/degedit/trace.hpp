#pragma once

#include "degedit/graph.hpp"
#include "degedit/instance.hpp"

#include <functional>
#include <string>
#include <vector>

namespace degedit {

/// One rule application: rule name, the vertices it acted on, and a free-form
/// `key=value` summary of parameter changes.
struct TraceEntry
{
    std::string rule;
    std::vector<Vertex> site;
    std::string detail;

    auto operator==(const TraceEntry&) const -> bool = default;
};

/// `rule <name> site <id> <id> ... [detail]`
auto format_trace_line(const TraceEntry& entry) -> std::string;
auto format_trace(const std::vector<TraceEntry>& trace) -> std::string;

/// Called after every rule application with the resulting instance.
using InstanceObserver = std::function<void(const Instance&, const TraceEntry&)>;

} // namespace degedit
