// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <regex>
#include <sstream>

#include "edgebench/cli.hpp"
#include "edgebench/config.hpp"
#include "edgebench/network.hpp"
#include "edgebench/scenario.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace edgebench;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ScenarioConfig fixture(const std::string& name) { return load_config(testutil::scenario(name)); }

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(testutil::fixtures() / "scenarios"))
        names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "edgebench");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    return code;
}

double mean_e2e(const ScenarioRun& r) { return r.report.metrics.at("e2e_ms").mean; }

double transmitted(const std::string& name) {
    return static_cast<double>(run_scenario(fixture(name)).report.bandwidth.total.transmitted_bytes);
}

// Batched hub fed by one device at an average of 1 msg/s for 30 minutes.
ScenarioConfig batching_scenario(double window_s, double holdback_s, Distribution gap) {
    ScenarioConfig c;
    c.name = "batching";
    c.platform_profile = "batched-hub";
    c.seed = 2024;
    c.workload.kind = WorkloadKind::custom;
    c.workload.items = 1800;
    c.workload.result_payload_bytes = Constant{234};
    c.workload.inter_item_gap_ms = std::move(gap);
    c.hub.mode = HubMode::batched;
    c.hub.window_s = window_s;
    c.hub.holdback_s = holdback_s;
    c.hub.platform_faithful = true;
    return c;
}

// Mean residence in ms plus whether every row agrees with the brute-force
// window walk.
std::pair<double, bool> residence_check(const ScenarioConfig& c) {
    const auto run = run_scenario(c);
    auto rows = run.report.rows;
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.t2 < b.t2; });
    std::vector<std::int64_t> arrivals, got;
    for (const auto& r : rows) {
        arrivals.push_back(r.t2);
        got.push_back(r.residence_ms);
    }
    const auto expect = oracle::batched_residence(arrivals, 0, round_half_even(*c.hub.window_s * 1000),
                                                  round_half_even(c.hub.holdback_s * 1000));
    return {oracle::mean(got), got == expect && run.report.incomplete == 0};
}

double number_after(const std::string& text, const std::string& label, int occurrence = 0) {
    const std::regex re(label + R"(\s+([0-9]+\.[0-9]+))");
    auto it = std::sregex_iterator(text.begin(), text.end(), re);
    for (int i = 0; i < occurrence && it != std::sregex_iterator(); ++i) ++it;
    if (it == std::sregex_iterator()) throw std::runtime_error("no '" + label + "' in cost output");
    return std::stod((*it)[1].str());
}

}  // namespace

int main() {
    report(1, "decomposition identity", [] {
        auto c = fixture("greengrass-image");
        c.workload.items = 10000;
        const auto t0 = std::chrono::steady_clock::now();
        const auto run = run_scenario(c);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t bad = 0;
        for (const auto& r : run.report.rows)
            if (r.e2e_ms != r.c_edge_ms + r.flight_ms + r.residence_ms) ++bad;
        const bool ok = bad == 0 && run.report.rows.size() == 10000 && secs < 5.0;
        return Outcome{ok, std::to_string(run.report.rows.size()) + " rows, " + std::to_string(bad) +
                               " violations, run " + fmt("%.3f", secs) + " s (limit 5 s)"};
    });

    report(2, "determinism", [] {
        testutil::TempDir dir;
        std::size_t same = 0;
        const auto names = fixture_names();
        for (const auto& n : names) {
            const auto a = dir / (n + "-a");
            const auto b = dir / (n + "-b");
            if (cli({"run", "--config", testutil::scenario(n).string(), "--out", a.string()}) != 0) continue;
            if (cli({"run", "--config", testutil::scenario(n).string(), "--out", b.string()}) != 0) continue;
            same += testutil::read_file(a / "metrics.csv") == testutil::read_file(b / "metrics.csv") &&
                    testutil::read_file(a / "report.json") == testutil::read_file(b / "report.json");
        }
        return Outcome{same == names.size() && same > 0,
                       std::to_string(same) + "/" + std::to_string(names.size()) +
                           " fixtures byte-identical (metrics.csv, report.json)"};
    });

    report(3, "batching residence", [] {
        const auto [m60u, ok60u] = residence_check(batching_scenario(60, 60, Uniform{0, 2000}));
        const auto [m60c, ok60c] = residence_check(batching_scenario(60, 60, Constant{1000}));
        const auto [m90u, ok90u] = residence_check(batching_scenario(90, 60, Uniform{0, 2000}));
        const bool ok = std::abs(m60u / 1000 - 90) <= 2 && std::abs(m60c / 1000 - 90) <= 2 &&
                        std::abs(m90u / 1000 - (45 + 60)) <= 2 && ok60u && ok60c && ok90u;
        return Outcome{ok, "W=60,H=60 mean " + fmt("%.2f", m60u / 1000) + " s (uniform gaps), " +
                               fmt("%.2f", m60c / 1000) + " s (1 Hz); target 90 +/- 2. W=90,H=60 mean " +
                               fmt("%.2f", m90u / 1000) + " s; target 45 + 60 +/- 2. per-row oracle " +
                               (ok60u && ok60c && ok90u ? "match" : "MISMATCH")};
    });

    report(4, "message conservation", [] {
        std::size_t ok = 0, immediate = 0, immediate_ok = 0;
        const auto names = fixture_names();
        for (const auto& n : names) {
            const auto c = fixture(n);
            const auto run = run_scenario(c);
            std::vector<std::uint64_t> in_blobs, emitted;
            for (const auto& [_, ids] : run.blob_contents) in_blobs.insert(in_blobs.end(), ids.begin(), ids.end());
            for (const auto& [id, _] : run.messages) emitted.push_back(id);
            std::sort(in_blobs.begin(), in_blobs.end());
            ok += in_blobs == emitted && c.link.drop_probability == 0;
            if (c.pipeline == PipelineKind::edge && c.hub.mode == HubMode::immediate) {
                ++immediate;
                immediate_ok += run.blobs.size() == run.messages.size();
            }
        }
        return Outcome{ok == names.size() && immediate > 0 && immediate_ok == immediate,
                       std::to_string(ok) + "/" + std::to_string(names.size()) +
                           " fixtures conserve the message multiset; immediate blob count = message count in " +
                           std::to_string(immediate_ok) + "/" + std::to_string(immediate)};
    });

    report(5, "bandwidth ratios", [] {
        const double audio_aws = transmitted("aws-cloud-audio") / transmitted("greengrass-audio");
        const double audio_az = transmitted("azure-cloud-audio") / transmitted("azureedge-audio");
        const double image_aws = transmitted("aws-cloud-image") / transmitted("greengrass-image");
        const double image_az = transmitted("azure-cloud-image") / transmitted("azureedge-image");
        const bool ok = std::abs(audio_aws - 36) <= 4 && std::abs(audio_az - 36) <= 4 &&
                        std::abs(image_aws - 81) <= 8 && std::abs(image_az - 77) <= 8;
        return Outcome{ok, "audio " + fmt("%.2f", audio_aws) + " (AWS) " + fmt("%.2f", audio_az) +
                               " (Azure), target 36 +/- 4; image AWS " + fmt("%.2f", image_aws) +
                               ", target 81 +/- 8; image Azure " + fmt("%.2f", image_az) + ", target 77 +/- 8"};
    });

    report(6, "cost model", [] {
        std::string out;
        const int code = cli({"cost", "--rate-card", (testutil::fixtures() / "ratecards/us-east-2018.yaml").string(),
                              "--usage", (testutil::fixtures() / "usage/camera-image.yaml").string()},
                             &out);
        const double edge = number_after(out, "total USD/month", 0);
        const double cloud = number_after(out, "total USD/month", 1);
        const double ratio = number_after(out, "cloud/edge cost ratio");
        const double edge_mb = number_after(out, "edge bandwidth");
        const double cloud_gb = number_after(out, "cloud bandwidth");
        const bool ok = code == 0 && std::abs(edge - 1.5584) <= 0.001 && std::abs(cloud - 8.027) <= 0.005 &&
                        std::abs(ratio - 5.2) <= 0.05 && std::abs(edge_mb - 253.125) <= 253.125 * 0.01 &&
                        std::abs(cloud_gb - 35.38) <= 35.38 * 0.01;
        return Outcome{ok, "edge $" + fmt("%.4f", edge) + " (1.5584 +/- 0.001), cloud $" + fmt("%.4f", cloud) +
                               " (8.027 +/- 0.005), ratio " + fmt("%.4f", ratio) + " (5.2 +/- 0.05), " +
                               fmt("%.3f", edge_mb) + " MB vs " + fmt("%.2f", cloud_gb) +
                               " GB (253.125 MB, 35.38 GB +/- 1%)"};
    });

    report(7, "flight-time proportionality", [] {
        std::size_t checked = 0, bad = 0;
        // Link level, sweeping sizes on several bandwidths.
        for (std::int64_t bps : {1000, 4096, 250000, 1000000}) {
            LinkModel link;
            link.bandwidth_bytes_per_s = static_cast<double>(bps);
            SeededRng rng(1);
            ByteLedger ledger;
            for (std::int64_t bytes = 0; bytes <= 200000; bytes += 997) {
                Message m;
                m.payload_bytes = bytes;
                const Millis f = *deliver(m, link, 0, rng, ledger);
                ++checked;
                if (f != oracle::serialization_ms(bytes, bps)) ++bad;
                // slope check: doubling an exactly divisible size doubles flight
                if (bytes * 1000 % bps == 0) {
                    m.payload_bytes = 2 * bytes;
                    if (*deliver(m, link, 0, rng, ledger) != 2 * f) ++bad;
                }
            }
        }
        // Scenario level: every row's flight is the serialization of its wire bytes.
        auto c = batching_scenario(60, 0, Constant{500});
        c.workload.items = 2000;
        c.workload.result_payload_bytes = Uniform{100, 50000};
        c.link.bandwidth_bytes_per_s = 250000;
        c.link.per_message_overhead_bytes = 1048;
        const auto run = run_scenario(c);
        for (const auto& r : run.report.rows) {
            ++checked;
            if (r.flight_ms != oracle::serialization_ms(r.payload_bytes + 1048, 250000)) ++bad;
        }
        return Outcome{bad == 0, std::to_string(checked) + " flights checked against ceil(bytes*1000/bw), " +
                                     std::to_string(bad) + " mismatches"};
    });

    report(8, "audio e2e ordering", [] {
        const double aws = mean_e2e(run_scenario(fixture("aws-cloud-audio")));
        const double gg = mean_e2e(run_scenario(fixture("greengrass-audio")));
        const double azc = mean_e2e(run_scenario(fixture("azure-cloud-audio")));
        const double aze = mean_e2e(run_scenario(fixture("azureedge-audio")));
        return Outcome{aws < gg && gg < azc && azc < aze,
                       "AWS-cloud " + fmt("%.3f", aws / 1000) + " s < Greengrass " + fmt("%.3f", gg / 1000) +
                           " s < Azure-cloud " + fmt("%.3f", azc / 1000) + " s < Azure-edge " +
                           fmt("%.3f", aze / 1000) + " s"};
    });

    report(9, "mean-statistics oracle", [] {
        SeededRng rng(9);
        std::vector<MetricRow> rows;
        for (std::uint64_t i = 0; i < 10000; ++i) {
            MetricRow r;
            r.id = i;
            r.c_edge_ms = static_cast<Millis>(rng.index(10000));
            r.t1 = static_cast<Millis>(rng.index(1000000));
            r.flight_ms = static_cast<Millis>(rng.index(300));
            r.residence_ms = static_cast<Millis>(rng.index(120001));
            r.t2 = r.t1 + r.flight_ms;
            r.t3 = r.t2 + r.residence_ms;
            r.e2e_ms = r.c_edge_ms + r.flight_ms + r.residence_ms;
            r.payload_bytes = static_cast<std::int64_t>(rng.index(2000));
            rows.push_back(r);
        }
        const auto rep = aggregate(rows);
        std::size_t bad = 0;
        for (const auto name : kMetricNames) {
            std::vector<std::int64_t> v;
            for (const auto& r : rows) {
                if (name == "c_edge_ms") v.push_back(r.c_edge_ms);
                else if (name == "flight_ms") v.push_back(r.flight_ms);
                else if (name == "residence_ms") v.push_back(r.residence_ms);
                else if (name == "e2e_ms") v.push_back(r.e2e_ms);
                else v.push_back(r.payload_bytes);
            }
            const auto& a = rep.metrics.at(std::string(name));
            if (round_half_even(a.mean) != oracle::mean_rounded(v)) ++bad;
            if (a.median != oracle::percentile(v, 50)) ++bad;
            if (a.p95 != oracle::percentile(v, 95)) ++bad;
        }
        return Outcome{bad == 0, "10000 rows x 5 metrics, mean/median/p95 mismatches: " + std::to_string(bad)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
