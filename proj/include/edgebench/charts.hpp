#pragma once

#include <map>
#include <span>
#include <string>

namespace edgebench {

struct RunReport;

/// One grouped bar chart per metric, keyed by file name ("e2e_ms.svg", ...).
/// Groups are workloads, bars within a group are the platform/pipeline
/// series in first-seen order. Throws EmptyInput when `reports` is empty.
std::map<std::string, std::string> emit_charts(std::span<const RunReport> reports);

/// All metric panels side by side in a single SVG.
std::string render_overview_svg(std::span<const RunReport> reports);

}  // namespace edgebench
