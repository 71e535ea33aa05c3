#include "edgebench/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "edgebench/charts.hpp"
#include "edgebench/error.hpp"

namespace edgebench {

using nlohmann::json;

MetricRow finalize_row(std::uint64_t id, const TimestampRecord& ts, std::int64_t payload_bytes) {
    if (!ts.complete()) {
        std::string missing;
        if (!ts.t1) missing += " t1";
        if (!ts.t2) missing += " t2";
        if (!ts.t3) missing += " t3";
        throw IncompleteRecord("message " + std::to_string(id) + " is missing" + missing);
    }
    MetricRow r;
    r.id = id;
    r.c_edge_ms = ts.c_edge;
    r.t1 = *ts.t1;
    r.t2 = *ts.t2;
    r.t3 = *ts.t3;
    r.flight_ms = r.t2 - r.t1;
    r.residence_ms = r.t3 - r.t2;
    r.e2e_ms = r.c_edge_ms + (r.t3 - r.t1);
    r.payload_bytes = payload_bytes;
    return r;
}

std::int64_t nearest_rank(std::span<const std::int64_t> sorted, int percent) {
    if (sorted.empty()) throw EmptyRun("percentile of an empty sample");
    const auto n = static_cast<std::int64_t>(sorted.size());
    std::int64_t rank = (percent * n + 99) / 100;
    rank = std::clamp<std::int64_t>(rank, 1, n);
    return sorted[static_cast<std::size_t>(rank - 1)];
}

Aggregate summarize(std::vector<std::int64_t> values) {
    if (values.empty()) throw EmptyRun("no rows to aggregate");
    std::sort(values.begin(), values.end());
    Aggregate a;
    a.count = static_cast<std::int64_t>(values.size());
    const std::int64_t sum = std::accumulate(values.begin(), values.end(), std::int64_t{0});
    a.mean = static_cast<double>(sum) / static_cast<double>(a.count);
    a.median = nearest_rank(values, 50);
    a.p95 = nearest_rank(values, 95);
    a.min = values.front();
    a.max = values.back();
    return a;
}

RunReport aggregate(std::span<const MetricRow> rows, const LedgerReport& bytes) {
    if (rows.empty()) throw EmptyRun("no rows to aggregate");
    std::vector<std::int64_t> c_edge, flight, residence, e2e, payload;
    for (const auto& r : rows) {
        c_edge.push_back(r.c_edge_ms);
        flight.push_back(r.flight_ms);
        residence.push_back(r.residence_ms);
        e2e.push_back(r.e2e_ms);
        payload.push_back(r.payload_bytes);
    }
    RunReport rep;
    rep.metrics["c_edge_ms"] = summarize(std::move(c_edge));
    rep.metrics["flight_ms"] = summarize(std::move(flight));
    rep.metrics["residence_ms"] = summarize(std::move(residence));
    rep.metrics["e2e_ms"] = summarize(std::move(e2e));
    rep.metrics["payload_bytes"] = summarize(std::move(payload));
    rep.bandwidth = bytes;
    rep.rows.assign(rows.begin(), rows.end());
    rep.emitted = static_cast<std::int64_t>(rows.size());
    return rep;
}

RunReport merge_runs(std::span<const RunReport> runs) {
    if (runs.empty()) throw EmptyRun("no runs to merge");
    std::vector<MetricRow> rows;
    LedgerReport bytes;
    auto add = [](ByteTotals& acc, const ByteTotals& t) {
        acc.payload_bytes += t.payload_bytes;
        acc.overhead_bytes += t.overhead_bytes;
        acc.transmitted_bytes += t.transmitted_bytes;
        acc.messages += t.messages;
    };
    for (const auto& run : runs) {
        rows.insert(rows.end(), run.rows.begin(), run.rows.end());
        for (const auto& [src, t] : run.bandwidth.sources) add(bytes.sources[src], t);
        add(bytes.total, run.bandwidth.total);
    }
    RunReport merged = aggregate(rows, bytes);
    const RunReport& first = runs.front();
    merged.seed = first.seed;
    merged.pipeline = first.pipeline;
    merged.platform_profile = first.platform_profile;
    merged.provider = first.provider;
    merged.workload = first.workload;
    merged.mode = first.mode;
    merged.config = first.config;
    merged.config_fingerprint = first.config_fingerprint;
    merged.emitted = 0;
    merged.incomplete = 0;
    for (const auto& run : runs) {
        merged.emitted += run.emitted;
        merged.incomplete += run.incomplete;
    }
    return merged;
}

std::string fingerprint(const json& config) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExportFormat export_format_from_string(const std::string& s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "json") return ExportFormat::json;
    if (s == "svg-chart" || s == "svg") return ExportFormat::svg_chart;
    throw UnsupportedFormat("export format '" + s + "' (expected csv, json or svg-chart)");
}

namespace {

json opt(const std::optional<json>& v) { return v ? *v : json(nullptr); }

json totals_json(const ByteTotals& t) {
    return {{"payload_bytes", t.payload_bytes},
            {"overhead_bytes", t.overhead_bytes},
            {"transmitted_bytes", t.transmitted_bytes},
            {"messages", t.messages}};
}

ByteTotals totals_from_json(const json& j) {
    return {j.at("payload_bytes").get<std::int64_t>(), j.at("overhead_bytes").get<std::int64_t>(),
            j.at("transmitted_bytes").get<std::int64_t>(), j.at("messages").get<std::int64_t>()};
}

std::string csv(const RunReport& report) {
    std::string out(kCsvHeader);
    out += '\n';
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%llu,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld\n",
                      static_cast<unsigned long long>(r.id), static_cast<long long>(r.c_edge_ms),
                      static_cast<long long>(r.t1), static_cast<long long>(r.t2), static_cast<long long>(r.t3),
                      static_cast<long long>(r.flight_ms), static_cast<long long>(r.residence_ms),
                      static_cast<long long>(r.e2e_ms), static_cast<long long>(r.payload_bytes));
        out += buf;
    }
    return out;
}

}  // namespace

json to_json(const RunReport& report) {
    json j;
    j["schema"] = report.schema;
    j["seed"] = report.seed;
    j["pipeline"] = report.pipeline;
    j["platform_profile"] = report.platform_profile;
    j["provider"] = report.provider;
    j["workload"] = report.workload;
    j["mode"] = report.mode;
    j["config"] = report.config;
    j["config_fingerprint"] = report.config_fingerprint;

    json metrics = json::object();
    for (const auto& [name, a] : report.metrics) {
        metrics[name] = {{"count", a.count}, {"mean", a.mean}, {"median", a.median},
                         {"p95", a.p95},     {"min", a.min},   {"max", a.max}};
    }
    j["metrics"] = metrics;

    json sources = json::object();
    for (const auto& [src, t] : report.bandwidth.sources) sources[src] = totals_json(t);
    j["bandwidth"] = {{"sources", sources}, {"total", totals_json(report.bandwidth.total)}};

    j["resources"] = opt(report.resources ? std::optional<json>(json{{"label", report.resources->label},
                                                                     {"cpu_pct_mean", report.resources->cpu_pct_mean},
                                                                     {"ram_mb_mean", report.resources->ram_mb_mean},
                                                                     {"samples", report.resources->samples}})
                                          : std::nullopt);
    j["hub"] = opt(report.hub ? std::optional<json>(json{{"mode", report.hub->mode},
                                                         {"blobs", report.hub->blobs},
                                                         {"messages", report.hub->messages}})
                              : std::nullopt);
    j["emitted"] = report.emitted;
    j["incomplete"] = report.incomplete;

    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back(json::array({r.id, r.c_edge_ms, r.t1, r.t2, r.t3, r.flight_ms, r.residence_ms, r.e2e_ms,
                                    r.payload_bytes}));
    }
    j["rows"] = {{"columns", json::array({"id", "c_edge_ms", "t1", "t2", "t3", "flight_ms", "residence_ms",
                                          "e2e_ms", "payload_bytes"})},
                 {"data", rows}};
    return j;
}

RunReport report_from_json(const json& j) {
    try {
        RunReport r;
        r.schema = j.at("schema").get<int>();
        if (r.schema != 1) throw ParseError("unsupported report schema " + std::to_string(r.schema));
        r.seed = j.at("seed").get<std::uint64_t>();
        r.pipeline = j.at("pipeline").get<std::string>();
        r.platform_profile = j.at("platform_profile").get<std::string>();
        r.provider = j.at("provider").get<std::string>();
        r.workload = j.at("workload").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.config = j.at("config");
        r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        for (const auto& [name, a] : j.at("metrics").items()) {
            r.metrics[name] = {a.at("count").get<std::int64_t>(), a.at("mean").get<double>(),
                               a.at("median").get<std::int64_t>(), a.at("p95").get<std::int64_t>(),
                               a.at("min").get<std::int64_t>(), a.at("max").get<std::int64_t>()};
        }
        const auto& bw = j.at("bandwidth");
        for (const auto& [src, t] : bw.at("sources").items()) r.bandwidth.sources[src] = totals_from_json(t);
        r.bandwidth.total = totals_from_json(bw.at("total"));
        if (const auto& res = j.at("resources"); !res.is_null()) {
            r.resources = ResourceSummary{res.at("label").get<std::string>(), res.at("cpu_pct_mean").get<double>(),
                                          res.at("ram_mb_mean").get<double>(), res.at("samples").get<std::int64_t>()};
        }
        if (const auto& hub = j.at("hub"); !hub.is_null()) {
            r.hub = HubSummary{hub.at("mode").get<std::string>(), hub.at("blobs").get<std::int64_t>(),
                               hub.at("messages").get<std::int64_t>()};
        }
        r.emitted = j.at("emitted").get<std::int64_t>();
        r.incomplete = j.at("incomplete").get<std::int64_t>();
        for (const auto& row : j.at("rows").at("data")) {
            r.rows.push_back({row.at(0).get<std::uint64_t>(), row.at(1).get<Millis>(), row.at(2).get<Millis>(),
                              row.at(3).get<Millis>(), row.at(4).get<Millis>(), row.at(5).get<Millis>(),
                              row.at(6).get<Millis>(), row.at(7).get<Millis>(), row.at(8).get<std::int64_t>()});
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string export_report(const RunReport& report, ExportFormat format) {
    switch (format) {
        case ExportFormat::csv: return csv(report);
        case ExportFormat::json: return to_json(report).dump(2) + "\n";
        case ExportFormat::svg_chart: return render_overview_svg(std::span<const RunReport>(&report, 1));
    }
    throw UnsupportedFormat("unknown export format");
}

std::string export_report(const RunReport& report, const std::string& format) {
    return export_report(report, export_format_from_string(format));
}

}  // namespace edgebench
