#include "edgebench/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <vector>

#include "edgebench/error.hpp"
#include "edgebench/metrics.hpp"

namespace edgebench {

namespace {

struct ChartMetric {
    const char* file;
    const char* title;
    const char* unit;
    std::function<std::optional<double>(const RunReport&)> value;
};

std::optional<double> metric_mean(const RunReport& r, const char* name, double scale) {
    auto it = r.metrics.find(name);
    if (it == r.metrics.end()) return std::nullopt;
    return it->second.mean * scale;
}

const std::vector<ChartMetric>& chart_metrics() {
    static const std::vector<ChartMetric> metrics = {
        {"e2e_ms", "Avg. end-to-end latency", "s", [](const RunReport& r) { return metric_mean(r, "e2e_ms", 1e-3); }},
        {"flight_ms", "Avg. time-in-flight / message", "ms",
         [](const RunReport& r) { return metric_mean(r, "flight_ms", 1.0); }},
        {"c_edge_ms", "Avg. compute time / message", "s",
         [](const RunReport& r) { return metric_mean(r, "c_edge_ms", 1e-3); }},
        {"residence_ms", "Avg. time in hub", "s",
         [](const RunReport& r) { return metric_mean(r, "residence_ms", 1e-3); }},
        {"payload_bytes", "Avg. payload size", "bytes",
         [](const RunReport& r) { return metric_mean(r, "payload_bytes", 1.0); }},
        {"transmitted_bytes", "Total transmitted", "MB",
         [](const RunReport& r) {
             return std::optional<double>(static_cast<double>(r.bandwidth.total.transmitted_bytes) / 1e6);
         }},
        {"cpu_pct", "Avg. CPU utilization", "%",
         [](const RunReport& r) {
             return r.resources ? std::optional<double>(r.resources->cpu_pct_mean) : std::nullopt;
         }},
        {"ram_mb", "Avg. RAM utilization", "MB",
         [](const RunReport& r) {
             return r.resources ? std::optional<double>(r.resources->ram_mb_mean) : std::nullopt;
         }},
    };
    return metrics;
}

int workload_rank(const std::string& w) {
    static const char* order[] = {"audio", "image", "scalar", "custom"};
    for (int i = 0; i < 4; ++i)
        if (w == order[i]) return i;
    return 4;
}

std::string series_name(const RunReport& r) { return r.platform_profile + " (" + r.pipeline + ")"; }

const char* palette(std::size_t i) {
    static const char* colors[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                   "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};
    return colors[i % 8];
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Rounds the axis maximum up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v) {
    if (v <= 0) return 1;
    const double p = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (v <= m * p) return m * p;
    return 10 * p;
}

constexpr double kPanelW = 420, kPanelH = 300;
constexpr double kLeft = 56, kRight = 12, kTop = 36, kBottom = 64;

std::string render_panel(const ChartMetric& m, std::span<const RunReport> reports, double ox, double oy) {
    std::vector<std::string> workloads, series;
    for (const auto& r : reports) {
        if (std::find(workloads.begin(), workloads.end(), r.workload) == workloads.end())
            workloads.push_back(r.workload);
        if (auto s = series_name(r); std::find(series.begin(), series.end(), s) == series.end())
            series.push_back(s);
    }
    std::stable_sort(workloads.begin(), workloads.end(), [](const std::string& a, const std::string& b) {
        const int ra = workload_rank(a), rb = workload_rank(b);
        return ra != rb ? ra < rb : (ra == 4 && a < b);
    });

    // value[w][s]; the last report wins when a cell repeats.
    std::vector<std::vector<std::optional<double>>> cell(workloads.size(),
                                                         std::vector<std::optional<double>>(series.size()));
    double vmax = 0;
    for (const auto& r : reports) {
        const auto w = std::find(workloads.begin(), workloads.end(), r.workload) - workloads.begin();
        const auto s = std::find(series.begin(), series.end(), series_name(r)) - series.begin();
        cell[w][s] = m.value(r);
        if (cell[w][s]) vmax = std::max(vmax, *cell[w][s]);
    }
    const double top = nice_ceiling(vmax);
    const double plot_w = kPanelW - kLeft - kRight, plot_h = kPanelH - kTop - kBottom;
    const double x0 = ox + kLeft, y0 = oy + kTop + plot_h;

    std::string out;
    out += "<g class=\"panel\" id=\"" + std::string(m.file) + "\">\n";
    out += "<text x=\"" + fmt("%.1f", ox + kPanelW / 2) + "\" y=\"" + fmt("%.1f", oy + 20) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape(m.title) + " (" + m.unit + ")</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = top * i / 4, y = y0 - plot_h * i / 4;
        out += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y) + "\" x2=\"" +
               fmt("%.1f", x0 + plot_w) + "\" y2=\"" + fmt("%.1f", y) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fmt("%.1f", x0 - 6) + "\" y=\"" + fmt("%.1f", y + 4) +
               "\" text-anchor=\"end\" font-size=\"10\">" + fmt("%.4g", v) + "</text>\n";
    }
    out += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y0) + "\" x2=\"" + fmt("%.1f", x0 + plot_w) +
           "\" y2=\"" + fmt("%.1f", y0) + "\" stroke=\"#000\"/>\n";

    const double group_w = plot_w / static_cast<double>(workloads.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(series.size());
    for (std::size_t w = 0; w < workloads.size(); ++w) {
        const double gx = x0 + group_w * static_cast<double>(w) + group_w * 0.1;
        for (std::size_t s = 0; s < series.size(); ++s) {
            if (!cell[w][s]) continue;
            const double h = plot_h * *cell[w][s] / top;
            const double bx = gx + bar_w * static_cast<double>(s);
            out += "<rect class=\"bar\" x=\"" + fmt("%.1f", bx) + "\" y=\"" + fmt("%.1f", y0 - h) + "\" width=\"" +
                   fmt("%.1f", bar_w) + "\" height=\"" + fmt("%.1f", h) + "\" fill=\"" + palette(s) + "\"><title>" +
                   escape(series[s]) + " " + escape(workloads[w]) + ": " + fmt("%.4g", *cell[w][s]) +
                   "</title></rect>\n";
        }
        out += "<text x=\"" + fmt("%.1f", gx + group_w * 0.4) + "\" y=\"" + fmt("%.1f", y0 + 16) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + escape(workloads[w]) + "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double ly = y0 + 30 + 12 * static_cast<double>(s % 2);
        const double lx = x0 + (plot_w / 2) * static_cast<double>((s / 2) % 2);
        out += "<rect x=\"" + fmt("%.1f", lx) + "\" y=\"" + fmt("%.1f", ly - 8) +
               "\" width=\"8\" height=\"8\" fill=\"" + palette(s) + "\"/>\n";
        out += "<text x=\"" + fmt("%.1f", lx + 12) + "\" y=\"" + fmt("%.1f", ly) + "\" font-size=\"10\">" +
               escape(series[s]) + "</text>\n";
    }
    out += "</g>\n";
    return out;
}

std::string svg_document(double w, double h, const std::string& body) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           fmt("%.0f", w) + "\" height=\"" + fmt("%.0f", h) + "\" viewBox=\"0 0 " + fmt("%.0f", w) + " " +
           fmt("%.0f", h) + "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n" +
           body + "</svg>\n";
}

}  // namespace

std::map<std::string, std::string> emit_charts(std::span<const RunReport> reports) {
    if (reports.empty()) throw EmptyInput("no reports to chart");
    std::map<std::string, std::string> out;
    for (const auto& m : chart_metrics()) {
        out[std::string(m.file) + ".svg"] = svg_document(kPanelW, kPanelH, render_panel(m, reports, 0, 0));
    }
    return out;
}

std::string render_overview_svg(std::span<const RunReport> reports) {
    if (reports.empty()) throw EmptyInput("no reports to chart");
    const auto& metrics = chart_metrics();
    constexpr int kCols = 4;
    const int rows = static_cast<int>((metrics.size() + kCols - 1) / kCols);
    std::string body;
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        body += render_panel(metrics[i], reports, kPanelW * static_cast<double>(i % kCols),
                             kPanelH * static_cast<double>(i / kCols));
    }
    return svg_document(kPanelW * kCols, kPanelH * rows, body);
}

}  // namespace edgebench
