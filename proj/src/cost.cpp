#include "edgebench/cost.hpp"

#include <cmath>
#include <cstdio>

#include "edgebench/core.hpp"
#include "edgebench/error.hpp"

namespace edgebench {

namespace {

constexpr double kKb = 1024.0;
constexpr double kGb = 1024.0 * 1024.0 * 1024.0;

MicroUsd micro(double usd) { return round_half_even(usd * 1e6); }

void non_negative(double v, const char* field) {
    if (!(v >= 0)) throw ValidationError(std::string(field) + " must be >= 0");
}

double storage_gb(std::int64_t items, double kb_each) {
    return static_cast<double>(items) * kb_each * kKb / kGb;
}

CostBreakdown sum(std::vector<CostComponent> parts) {
    CostBreakdown b;
    b.components = std::move(parts);
    for (const auto& c : b.components) b.total += c.amount;
    return b;
}

}  // namespace

void validate(const RateCard& c) {
    non_negative(c.edge_runtime_usd_per_device_month, "edge_runtime_usd_per_device_month");
    non_negative(c.storage_usd_per_gb_month, "storage_usd_per_gb_month");
    non_negative(c.put_usd_per_1k, "put_usd_per_1k");
    non_negative(c.get_usd_per_1k, "get_usd_per_1k");
    non_negative(c.function_usd_per_gb_s, "function_usd_per_gb_s");
    non_negative(c.function_usd_per_invocation, "function_usd_per_invocation");
}

void validate(const UsageScenario& u) {
    non_negative(static_cast<double>(u.messages_per_month), "messages_per_month");
    non_negative(u.avg_message_kb, "avg_message_kb");
    non_negative(u.avg_input_kb, "avg_input_kb");
    non_negative(u.function_exec_ms, "function_exec_ms");
    non_negative(u.function_mem_gb, "function_mem_gb");
    non_negative(static_cast<double>(u.devices), "devices");
}

std::int64_t messages_per_month(double interval_s) {
    if (!(interval_s > 0)) throw InvalidRate("interval must be > 0 s");
    return static_cast<std::int64_t>(std::floor(30.0 * 24 * 3600 / interval_s));
}

CostBreakdown edge_monthly_cost(const RateCard& card, const UsageScenario& u) {
    const double requests_k = static_cast<double>(u.messages_per_month) / 1000.0;
    return sum({
        {"edge runtime", micro(static_cast<double>(u.devices) * card.edge_runtime_usd_per_device_month)},
        {"result storage", micro(storage_gb(u.messages_per_month, u.avg_message_kb) * card.storage_usd_per_gb_month)},
        {"put requests", micro(requests_k * card.put_usd_per_1k)},
    });
}

CostBreakdown cloud_monthly_cost(const RateCard& card, const UsageScenario& u) {
    const double n = static_cast<double>(u.messages_per_month);
    const double gb_s = n * (u.function_exec_ms / 1000.0) * u.function_mem_gb;
    std::vector<CostComponent> parts = {
        {"raw input storage", micro(storage_gb(u.messages_per_month, u.avg_input_kb) * card.storage_usd_per_gb_month)},
        {"result storage", micro(storage_gb(u.messages_per_month, u.avg_message_kb) * card.storage_usd_per_gb_month)},
        {"get + 2x put requests", micro(n / 1000.0 * (card.get_usd_per_1k + 2 * card.put_usd_per_1k))},
        {"function GB-s", micro(gb_s * card.function_usd_per_gb_s)},
    };
    if (card.function_usd_per_invocation > 0)
        parts.push_back({"function invocations", micro(n * card.function_usd_per_invocation)});
    return sum(std::move(parts));
}

double monthly_bandwidth(const UsageScenario& u, PipelineKind mode) {
    const double kb = mode == PipelineKind::edge ? u.avg_message_kb : u.avg_input_kb;
    return static_cast<double>(u.messages_per_month) * kb * kKb;
}

std::string format_usd(MicroUsd amount, int decimals) {
    if (decimals < 0 || decimals > 6) decimals = 4;
    std::int64_t unit = 1;
    for (int i = decimals; i < 6; ++i) unit *= 10;
    const bool neg = amount < 0;
    std::int64_t a = neg ? -amount : amount;
    std::int64_t q = a / unit;
    const std::int64_t r = a % unit;
    if (2 * r > unit || (2 * r == unit && (q % 2) == 1)) ++q;

    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    char buf[64];
    if (decimals == 0) {
        std::snprintf(buf, sizeof buf, "%s%lld", neg ? "-" : "", static_cast<long long>(q));
    } else {
        std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", neg ? "-" : "", static_cast<long long>(q / scale), decimals,
                      static_cast<long long>(q % scale));
    }
    return buf;
}

double to_usd(MicroUsd amount) { return static_cast<double>(amount) / 1e6; }

std::string render_cost_table(const CostBreakdown& edge, const CostBreakdown& cloud, const UsageScenario& usage) {
    std::string out;
    auto section = [&](const char* title, const CostBreakdown& b) {
        out += title;
        out += '\n';
        char line[128];
        for (const auto& c : b.components) {
            std::snprintf(line, sizeof line, "  %-24s %12s\n", c.name.c_str(), format_usd(c.amount).c_str());
            out += line;
        }
        std::string sum;
        for (std::size_t i = 0; i < b.components.size(); ++i) {
            if (i) sum += " + ";
            sum += format_usd(b.components[i].amount);
        }
        std::snprintf(line, sizeof line, "  %-24s %12s  (%s)\n", "total USD/month", format_usd(b.total).c_str(),
                      sum.c_str());
        out += line;
    };
    section("edge pipeline", edge);
    section("cloud pipeline", cloud);

    char line[160];
    const double ratio = edge.total > 0 ? static_cast<double>(cloud.total) / static_cast<double>(edge.total) : 0;
    std::snprintf(line, sizeof line, "cloud/edge cost ratio     %12.4f\n", ratio);
    out += line;
    std::snprintf(line, sizeof line, "edge bandwidth            %12.3f MB/month\n",
                  monthly_bandwidth(usage, PipelineKind::edge) / (1024.0 * 1024.0));
    out += line;
    std::snprintf(line, sizeof line, "cloud bandwidth           %12.2f GB/month\n",
                  monthly_bandwidth(usage, PipelineKind::cloud) / kGb);
    out += line;
    return out;
}

}  // namespace edgebench
