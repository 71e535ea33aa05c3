#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "edgebench/cloud_pipeline.hpp"
#include "edgebench/cost.hpp"
#include "edgebench/hub.hpp"
#include "edgebench/network.hpp"
#include "edgebench/workloads.hpp"

namespace edgebench {

enum class RunMode { virtual_time, live };

std::string to_string(RunMode mode);
std::string to_string(PipelineKind kind);

/// A fully resolved scenario.
struct ScenarioConfig {
    std::string name;
    PipelineKind pipeline = PipelineKind::edge;
    std::string platform_profile;
    std::string provider;
    RunMode mode = RunMode::virtual_time;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    Millis skew_edge_ms = 0;
    std::int64_t blob_envelope_bytes = 0;
    WorkloadSpec workload;
    LinkModel link;
    HubPolicy hub;
    std::optional<CloudFunctionProfile> cloud_function;
    std::optional<ResourceProfile> resources;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Cross-field checks plus every component's own validation.
void validate(const ScenarioConfig& config);

/// Loads a scenario file (YAML, or JSON, which is a YAML subset).
///
/// `extends: <path>` pulls in a parent file, resolved relative to the
/// including file (".yaml" is appended when the path has no extension).
/// Top-level sections merge key by key, child over parent; a key's value is
/// always replaced whole. Unknown keys are fatal. A report.json is accepted
/// too: its embedded resolved config is loaded.
///
/// Errors (ParseError, UnknownKey, MissingProfile, ValidationError,
/// InvalidDistribution) name the file and line:column at fault.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Same, from in-memory text; `origin` is used in diagnostics and as the
/// base directory for `extends`.
ScenarioConfig load_config_text(const std::string& text, const std::filesystem::path& origin);

/// Resolved config as JSON; load_config() of its dump yields an equal config.
nlohmann::json to_json(const ScenarioConfig& config);

RateCard load_rate_card(const std::filesystem::path& path);
UsageScenario load_usage(const std::filesystem::path& path);

}  // namespace edgebench
