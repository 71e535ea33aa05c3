#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edgebench {

/// Currency in integer micro-dollars.
using MicroUsd = std::int64_t;

/// Unit prices. Sizes are binary: 1 KB = 1024 B, 1 GB = 2^30 B.
struct RateCard {
    std::string name;
    double edge_runtime_usd_per_device_month = 0;
    double storage_usd_per_gb_month = 0;
    double put_usd_per_1k = 0;
    double get_usd_per_1k = 0;
    double function_usd_per_gb_s = 0;
    double function_usd_per_invocation = 0;

    friend bool operator==(const RateCard&, const RateCard&) = default;
};

struct UsageScenario {
    std::int64_t messages_per_month = 0;
    double avg_message_kb = 0;      // edge result message, headers included
    double avg_input_kb = 0;        // raw item uploaded by the cloud pipeline
    double function_exec_ms = 0;
    double function_mem_gb = 0;
    std::int64_t devices = 1;

    friend bool operator==(const UsageScenario&, const UsageScenario&) = default;
};

/// Throws ValidationError on negative prices or usage.
void validate(const RateCard& card);
void validate(const UsageScenario& usage);

/// Items per 30-day month when one item is produced every `interval_s`.
std::int64_t messages_per_month(double interval_s);

struct CostComponent {
    std::string name;
    MicroUsd amount = 0;
};

struct CostBreakdown {
    std::vector<CostComponent> components;
    MicroUsd total = 0;
};

/// runtime fee per device + result storage + result PUT requests.
CostBreakdown edge_monthly_cost(const RateCard& card, const UsageScenario& usage);

/// raw-input storage + result storage + (GET + 2 PUT) requests + function
/// GB-seconds (+ per-invocation fee).
CostBreakdown cloud_monthly_cost(const RateCard& card, const UsageScenario& usage);

enum class PipelineKind { edge, cloud };

/// Bytes crossing the device link per month: result messages for the edge
/// pipeline, raw input uploads for the cloud pipeline.
double monthly_bandwidth(const UsageScenario& usage, PipelineKind mode);

/// Dollars rounded half-to-even to `decimals` places, e.g. "1.5584".
std::string format_usd(MicroUsd amount, int decimals = 4);

double to_usd(MicroUsd amount);

/// Component table in the additive form "a + b + c = total".
std::string render_cost_table(const CostBreakdown& edge, const CostBreakdown& cloud, const UsageScenario& usage);

}  // namespace edgebench
