#include "edgebench/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "edgebench/config.hpp"
#include "edgebench/cost.hpp"
#include "edgebench/error.hpp"
#include "edgebench/scenario.hpp"

#ifndef EDGEBENCH_FIXTURES_DIR
#define EDGEBENCH_FIXTURES_DIR "fixtures"
#endif

namespace edgebench {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

double mean_of(const RunReport& r, const std::string& metric) {
    auto it = r.metrics.find(metric);
    return it == r.metrics.end() ? 0.0 : it->second.mean;
}

fs::path default_out_dir(const ScenarioConfig& config) {
    if (config.output_dir) return *config.output_dir;
    if (const char* env = std::getenv("EDGEBENCH_OUT"); env && *env) return env;
    return "edgebench-out";
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& mode,
            const std::string& out_dir, const std::string& persist, std::ostream& out, std::ostream& err) {
    ScenarioConfig config = load_config(config_path);
    if (seed) config.seed = seed;
    if (mode == "live") config.mode = RunMode::live;
    else if (mode == "virtual") config.mode = RunMode::virtual_time;
    validate(config);

    RunOptions options;
    if (!persist.empty()) options.persist_blobs = persist;
    const ScenarioRun run = run_scenario(config, options);
    const fs::path dir = out_dir.empty() ? default_out_dir(config) : fs::path(out_dir);
    write_artifacts(run.report, dir);

    const auto& r = run.report;
    out << "scenario " << (config.name.empty() ? config_path : config.name) << " (" << r.pipeline << ", "
        << r.platform_profile << ", " << r.workload << ", " << r.mode << ")\n";
    out << "  messages   " << r.emitted << " emitted, " << r.rows.size() << " stored\n";
    out << "  e2e        mean " << fixed(mean_of(r, "e2e_ms") / 1000.0, 3) << " s\n";
    out << "  flight     mean " << fixed(mean_of(r, "flight_ms"), 1) << " ms\n";
    out << "  compute    mean " << fixed(mean_of(r, "c_edge_ms") / 1000.0, 3) << " s\n";
    out << "  hub        mean " << fixed(mean_of(r, "residence_ms") / 1000.0, 3) << " s\n";
    out << "  network    " << fixed(static_cast<double>(r.bandwidth.total.transmitted_bytes) / 1e6, 4) << " MB\n";
    out << "  artifacts  " << dir.string() << "\n";
    if (r.incomplete > 0) {
        err << "error: " << r.incomplete << " message(s) never reached a blob\n";
        return 1;
    }
    return 0;
}

int cmd_compare(const std::vector<std::string>& paths, std::ostream& out) {
    if (paths.empty()) throw EmptyInput("compare needs at least one report");
    std::vector<RunReport> reports;
    for (const auto& p : paths) reports.push_back(load_report(p));

    out << pad("platform", 16) << pad("pipeline", 9) << pad("workload", 9) << pad("e2e_s", 10) << pad("flight_ms", 10)
        << pad("compute_s", 10) << pad("hub_s", 10) << "transmitted_MB\n";
    for (const auto& r : reports) {
        out << pad(r.platform_profile, 16) << pad(r.pipeline, 9) << pad(r.workload, 9)
            << pad(fixed(mean_of(r, "e2e_ms") / 1000.0, 3), 10) << pad(fixed(mean_of(r, "flight_ms"), 1), 10)
            << pad(fixed(mean_of(r, "c_edge_ms") / 1000.0, 3), 10)
            << pad(fixed(mean_of(r, "residence_ms") / 1000.0, 3), 10)
            << fixed(static_cast<double>(r.bandwidth.total.transmitted_bytes) / 1e6, 4) << "\n";
    }

    // Pair edge and cloud runs of the same provider and workload.
    std::map<std::pair<std::string, std::string>, std::pair<const RunReport*, const RunReport*>> pairs;
    for (const auto& r : reports) {
        auto& slot = pairs[{r.provider, r.workload}];
        (r.pipeline == "cloud" ? slot.second : slot.first) = &r;
    }
    bool header = false;
    for (const auto& [key, p] : pairs) {
        if (!p.first || !p.second) continue;
        if (!header) {
            out << "\n" << pad("provider", 10) << pad("workload", 9) << pad("edge_MB", 10) << pad("cloud_MB", 10)
                << pad("edge_e2e_s", 11) << pad("cloud_e2e_s", 12) << "byte_ratio\n";
            header = true;
        }
        const double edge_b = static_cast<double>(p.first->bandwidth.total.transmitted_bytes);
        const double cloud_b = static_cast<double>(p.second->bandwidth.total.transmitted_bytes);
        out << pad(key.first.empty() ? "-" : key.first, 10) << pad(key.second, 9) << pad(fixed(edge_b / 1e6, 4), 10)
            << pad(fixed(cloud_b / 1e6, 4), 10) << pad(fixed(mean_of(*p.first, "e2e_ms") / 1000.0, 3), 11)
            << pad(fixed(mean_of(*p.second, "e2e_ms") / 1000.0, 3), 12)
            << (edge_b > 0 ? fixed(cloud_b / edge_b, 2) : std::string("inf")) << "\n";
    }
    return 0;
}

int cmd_cost(const std::string& card_path, const std::string& usage_path, std::ostream& out) {
    const RateCard card = load_rate_card(card_path);
    const UsageScenario usage = load_usage(usage_path);
    out << "rate card " << (card.name.empty() ? card_path : card.name) << ", " << usage.messages_per_month
        << " messages/month\n";
    out << render_cost_table(edge_monthly_cost(card, usage), cloud_monthly_cost(card, usage), usage);
    return 0;
}

int cmd_validate(const std::string& config_path, std::ostream& out) {
    const ScenarioConfig config = load_config(config_path);
    out << to_json(config).dump(2) << "\n";
    return 0;
}

int cmd_charts(const std::vector<std::string>& paths, const std::string& out_dir, std::ostream& out) {
    if (paths.empty()) throw EmptyInput("charts needs at least one report");
    std::vector<RunReport> reports;
    for (const auto& p : paths) reports.push_back(load_report(p));
    write_charts(reports, out_dir);
    out << "charts written to " << out_dir << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Edge-to-cloud pipeline simulator and benchmark harness", "edgebench"};
    app.require_subcommand(1);

    std::string config_path, mode, out_dir, persist;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Run a scenario and write report.json, metrics.csv and charts/");
    run->add_option("--config", config_path, "Scenario file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--mode", mode, "virtual or live")->check(CLI::IsMember({"virtual", "live"}));
    run->add_option("--out", out_dir, "Output directory (default: config output_dir, $EDGEBENCH_OUT, ./edgebench-out)");
    run->add_option("--persist-blobs", persist, "Mirror blobs to this directory as JSON");

    std::vector<std::string> compare_paths;
    auto* compare = app.add_subcommand("compare", "Tabulate reports and pair edge/cloud runs");
    compare->add_option("reports", compare_paths, "report.json files")->required();

    std::string card = std::string(EDGEBENCH_FIXTURES_DIR) + "/ratecards/us-east-2018.yaml";
    std::string usage = std::string(EDGEBENCH_FIXTURES_DIR) + "/usage/camera-image.yaml";
    auto* cost = app.add_subcommand("cost", "Monthly infrastructure cost breakdown");
    cost->add_option("--rate-card", card, "Rate card file")->capture_default_str();
    cost->add_option("--usage", usage, "Usage scenario file")->capture_default_str();

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Load, resolve and check a scenario file");
    validate_cmd->add_option("--config", validate_path, "Scenario file")->required();

    std::vector<std::string> chart_paths;
    std::string chart_dir = "charts";
    auto* charts = app.add_subcommand("charts", "Render grouped bar charts over several reports");
    charts->add_option("reports", chart_paths, "report.json files")->required();
    charts->add_option("--out", chart_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(config_path, seed, mode, out_dir, persist, out, err);
        if (*compare) return cmd_compare(compare_paths, out);
        if (*cost) return cmd_cost(card, usage, out);
        if (*validate_cmd) return cmd_validate(validate_path, out);
        if (*charts) return cmd_charts(chart_paths, chart_dir, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace edgebench
