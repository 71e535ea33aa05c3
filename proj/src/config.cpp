#include "edgebench/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "edgebench/error.hpp"

namespace edgebench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(RunMode mode) { return mode == RunMode::live ? "live" : "virtual"; }
std::string to_string(PipelineKind kind) { return kind == PipelineKind::cloud ? "cloud" : "edge"; }

namespace {

const std::set<std::string> kSections = {"workload", "link", "hub", "cloud_function", "resources"};

struct Located {
    YAML::Node node;
    std::string file;
};

std::string where(const Located& l) {
    const YAML::Mark m = l.node.Mark();
    if (m.is_null()) return l.file;
    return l.file + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

YAML::Node parse_yaml(const std::string& text, const std::string& origin) {
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(origin + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                         ": " + e.msg);
    }
}

/// Keys flattened to "section.key" (or "key" at top level), child layers
/// overwriting parents.
using Flat = std::map<std::string, Located>;

void flatten(Flat& out, YAML::Node root, const std::string& file, const fs::path& base_dir,
             std::vector<fs::path>& chain) {
    if (!root || root.IsNull()) return;
    if (!root.IsMap()) throw ParseError(file + ": top level must be a mapping");
    if (root["schema"] && root["config"]) root = root["config"];  // report.json
    if (!root.IsMap()) throw ParseError(file + ": embedded config must be a mapping");

    if (const auto ext = root["extends"]) {
        const Located at{ext, file};
        if (!ext.IsScalar()) throw ParseError(where(at) + ": 'extends' must be a path");
        fs::path parent = base_dir / ext.as<std::string>();
        if (!parent.has_extension()) parent += ".yaml";
        if (!fs::exists(parent)) {
            throw MissingProfile(where(at) + ": profile '" + ext.as<std::string>() + "' not found (looked for " +
                                 parent.string() + ")");
        }
        const fs::path canon = fs::weakly_canonical(parent);
        for (const auto& p : chain)
            if (p == canon) throw ParseError(where(at) + ": 'extends' cycle through " + canon.string());
        chain.push_back(canon);
        flatten(out, parse_yaml(read_file(parent), parent.string()), parent.string(), parent.parent_path(), chain);
        chain.pop_back();
    }

    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (key == "extends") continue;
        if (kSections.contains(key)) {
            // `section: null` drops whatever a parent set inside it.
            if (!kv.second || kv.second.IsNull()) {
                std::erase_if(out, [&](const auto& e) { return e.first.starts_with(key + "."); });
            }
        }
        if (kSections.contains(key) && kv.second.IsMap()) {
            out[key] = {kv.second, file};
            for (const auto& inner : kv.second) out[key + "." + inner.first.as<std::string>()] = {inner.second, file};
        } else {
            out[key] = {kv.second, file};
        }
    }
}

class Reader {
public:
    Reader(Flat flat, std::string origin) : flat_(std::move(flat)), origin_(std::move(origin)) {}

    /// Present and non-null value for `key`; marks it consumed.
    std::optional<Located> take(const std::string& key) {
        auto it = flat_.find(key);
        if (it == flat_.end()) return std::nullopt;
        consumed_.insert(key);
        if (!it->second.node || it->second.node.IsNull()) return std::nullopt;
        return it->second;
    }

    bool has_section(const std::string& section) {
        auto it = flat_.find(section);
        if (it == flat_.end()) return false;
        consumed_.insert(section);
        if (!it->second.node || it->second.node.IsNull()) return false;
        if (!it->second.node.IsMap()) throw ParseError(where(it->second) + ": '" + section + "' must be a mapping");
        return true;
    }

    template <class T>
    T scalar(const Located& l, const std::string& key, const char* expected) {
        try {
            if (!l.node.IsScalar()) throw YAML::BadConversion(l.node.Mark());
            return l.node.as<T>();
        } catch (const YAML::BadConversion&) {
            throw ParseError(where(l) + ": expected " + expected + " for '" + key + "'");
        }
    }

    double number(const Located& l, const std::string& key) {
        const double v = scalar<double>(l, key, "a number");
        if (!std::isfinite(v)) throw ParseError(where(l) + ": '" + key + "' is not finite");
        return v;
    }

    std::int64_t integer(const Located& l, const std::string& key) {
        const double v = number(l, key);
        if (v != std::floor(v) || std::fabs(v) > 9.0e15)
            throw ParseError(where(l) + ": expected an integer for '" + key + "'");
        // Re-read exactly when the text is a plain integer.
        try {
            return l.node.as<std::int64_t>();
        } catch (const YAML::BadConversion&) {
            return static_cast<std::int64_t>(v);
        }
    }

    void number(const std::string& key, double& out) {
        if (auto l = take(key)) out = number(*l, key);
    }
    void number(const std::string& key, std::optional<double>& out) {
        out.reset();
        if (auto l = take(key)) out = number(*l, key);
    }
    void integer(const std::string& key, std::int64_t& out) {
        if (auto l = take(key)) out = integer(*l, key);
    }
    void integer(const std::string& key, std::optional<std::int64_t>& out) {
        out.reset();
        if (auto l = take(key)) out = integer(*l, key);
    }
    void text(const std::string& key, std::string& out) {
        if (auto l = take(key)) out = scalar<std::string>(*l, key, "a string");
    }
    void boolean(const std::string& key, bool& out) {
        if (auto l = take(key)) out = scalar<bool>(*l, key, "true or false");
    }

    void distribution(const std::string& key, Distribution& out) {
        auto l = take(key);
        if (!l) return;
        out = parse_distribution(*l, key);
        try {
            validate(out);
        } catch (const InvalidDistribution& e) {
            throw InvalidDistribution(where(*l) + ": '" + key + "': " + e.what());
        }
    }

    Distribution parse_distribution(const Located& l, const std::string& key) {
        if (l.node.IsScalar()) return Constant{number(l, key)};
        if (!l.node.IsMap() || l.node.size() != 1)
            throw ParseError(where(l) + ": '" + key +
                             "' must be a number or one of {constant|uniform|normal|empirical: ...}");
        const auto kind = l.node.begin()->first.as<std::string>();
        const Located arg{l.node.begin()->second, l.file};
        auto pair = [&](const char* what) {
            if (!arg.node.IsSequence() || arg.node.size() != 2)
                throw ParseError(where(arg) + ": '" + key + "." + kind + "' expects [" + what + "]");
            return std::pair{number({arg.node[0], l.file}, key), number({arg.node[1], l.file}, key)};
        };
        if (kind == "constant") return Constant{number(arg, key)};
        if (kind == "uniform") {
            auto [a, b] = pair("a, b");
            return Uniform{a, b};
        }
        if (kind == "normal") {
            auto [m, s] = pair("mean, sigma");
            return Normal{m, s};
        }
        if (kind == "empirical") {
            if (!arg.node.IsSequence()) throw ParseError(where(arg) + ": '" + key + ".empirical' expects a list");
            Empirical e;
            for (const auto& v : arg.node) e.values.push_back(number({v, l.file}, key));
            return e;
        }
        throw ParseError(where(l) + ": unknown distribution '" + kind + "' for '" + key + "'");
    }

    void reject_leftovers() const {
        for (const auto& [key, loc] : flat_) {
            if (!consumed_.contains(key)) throw UnknownKey(where(loc) + ": unknown key '" + key + "'");
        }
    }

    const std::string& origin() const { return origin_; }

private:
    Flat flat_;
    std::set<std::string> consumed_;
    std::string origin_;
};

ScenarioConfig parse_scenario(Reader& r) {
    ScenarioConfig c;
    r.text("name", c.name);
    if (auto l = r.take("pipeline")) {
        const auto v = r.scalar<std::string>(*l, "pipeline", "a string");
        if (v == "edge") c.pipeline = PipelineKind::edge;
        else if (v == "cloud") c.pipeline = PipelineKind::cloud;
        else throw ValidationError(where(*l) + ": pipeline must be 'edge' or 'cloud', got '" + v + "'");
    }
    r.text("platform_profile", c.platform_profile);
    r.text("provider", c.provider);
    if (auto l = r.take("mode")) {
        const auto v = r.scalar<std::string>(*l, "mode", "a string");
        if (v == "virtual") c.mode = RunMode::virtual_time;
        else if (v == "live") c.mode = RunMode::live;
        else throw ValidationError(where(*l) + ": mode must be 'virtual' or 'live', got '" + v + "'");
    }
    if (auto l = r.take("seed")) c.seed = r.scalar<std::uint64_t>(*l, "seed", "an unsigned 64-bit integer");
    if (auto l = r.take("output_dir")) c.output_dir = r.scalar<std::string>(*l, "output_dir", "a path");
    r.integer("skew_edge_ms", c.skew_edge_ms);
    r.integer("blob_envelope_bytes", c.blob_envelope_bytes);

    if (r.has_section("workload")) {
        auto& w = c.workload;
        if (auto l = r.take("workload.kind")) {
            try {
                w.kind = workload_kind_from_string(r.scalar<std::string>(*l, "workload.kind", "a string"));
            } catch (const ValidationError& e) {
                throw ValidationError(where(*l) + ": " + e.what());
            }
        }
        r.integer("workload.items", w.items);
        r.integer("workload.devices", w.devices);
        r.distribution("workload.input_bytes_per_item", w.input_bytes_per_item);
        r.distribution("workload.compute_ms", w.compute_ms);
        r.distribution("workload.result_payload_bytes", w.result_payload_bytes);
        r.distribution("workload.inter_item_gap_ms", w.inter_item_gap_ms);
        r.number("workload.scalar_freq_hz", w.scalar_freq_hz);
        r.number("workload.scalar_interval_s", w.scalar_interval_s);
        r.number("workload.warmup_delay_s", w.warmup_delay_s);
    }
    if (r.has_section("link")) {
        auto& k = c.link;
        r.distribution("link.propagation_ms", k.propagation_ms);
        k.bandwidth_bytes_per_s.reset();
        if (auto l = r.take("link.bandwidth_bytes_per_s")) {
            if (l->node.IsScalar() && l->node.Scalar() == "unlimited") {
                k.bandwidth_bytes_per_s.reset();
            } else {
                k.bandwidth_bytes_per_s = r.number(*l, "link.bandwidth_bytes_per_s");
            }
        }
        r.integer("link.per_message_overhead_bytes", k.per_message_overhead_bytes);
        r.number("link.drop_probability", k.drop_probability);
    }
    if (r.has_section("hub")) {
        auto& h = c.hub;
        if (auto l = r.take("hub.mode")) {
            try {
                h.mode = hub_mode_from_string(r.scalar<std::string>(*l, "hub.mode", "a string"));
            } catch (const ValidationError& e) {
                throw ValidationError(where(*l) + ": " + e.what());
            }
        }
        r.number("hub.window_s", h.window_s);
        r.integer("hub.chunk_bytes", h.chunk_bytes);
        r.number("hub.holdback_s", h.holdback_s);
        r.distribution("hub.write_latency_ms", h.write_latency_ms);
        r.boolean("hub.platform_faithful", h.platform_faithful);
    }
    if (r.has_section("cloud_function")) {
        CloudFunctionProfile f;
        r.distribution("cloud_function.trigger_overhead_ms", f.trigger_overhead_ms);
        r.distribution("cloud_function.exec_ms", f.exec_ms);
        r.distribution("cloud_function.result_write_ms", f.result_write_ms);
        r.number("cloud_function.memory_mb", f.memory_mb);
        r.distribution("cloud_function.inter_upload_gap_s", f.inter_upload_gap_s);
        c.cloud_function = f;
    }
    if (r.has_section("resources")) {
        ResourceProfile p;
        r.distribution("resources.cpu_pct", p.cpu_pct);
        r.distribution("resources.ram_mb", p.ram_mb);
        r.number("resources.platform_ram_delta_mb", p.platform_ram_delta_mb);
        std::int64_t cores = p.cores;
        r.integer("resources.cores", cores);
        p.cores = static_cast<int>(cores);
        c.resources = p;
    }
    r.reject_leftovers();
    return c;
}

ScenarioConfig load_from_root(const YAML::Node& root, const fs::path& origin) {
    Flat flat;
    std::vector<fs::path> chain{fs::weakly_canonical(origin)};
    flatten(flat, root, origin.string(), origin.parent_path(), chain);
    Reader reader(std::move(flat), origin.string());
    ScenarioConfig c = parse_scenario(reader);
    try {
        validate(c);
    } catch (const Error& e) {
        throw ValidationError(origin.string() + ": " + e.what());
    }
    return c;
}

json distribution_json(const Distribution& d) {
    if (auto* c = std::get_if<Constant>(&d)) return {{"constant", c->value}};
    if (auto* u = std::get_if<Uniform>(&d)) return {{"uniform", {u->lo, u->hi}}};
    if (auto* n = std::get_if<Normal>(&d)) return {{"normal", {n->mean, n->stddev}}};
    return {{"empirical", std::get<Empirical>(d).values}};
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

Flat flat_file(const fs::path& path) {
    Flat flat;
    const auto root = parse_yaml(read_file(path), path.string());
    if (!root || !root.IsMap()) throw ParseError(path.string() + ": top level must be a mapping");
    for (const auto& kv : root) flat[kv.first.as<std::string>()] = {kv.second, path.string()};
    return flat;
}

}  // namespace

void validate(const ScenarioConfig& c) {
    validate(c.workload);
    validate(c.link);
    validate(c.hub);
    if (c.mode == RunMode::virtual_time && !c.seed) throw ValidationError("seed is required in virtual mode");
    if (c.blob_envelope_bytes < 0) throw ValidationError("blob_envelope_bytes must be >= 0");
    if (c.pipeline == PipelineKind::cloud) {
        if (!c.cloud_function) throw ValidationError("cloud pipeline requires a cloud_function section");
        validate(*c.cloud_function);
    }
    if (c.resources) {
        validate(c.resources->cpu_pct);
        validate(c.resources->ram_mb);
        if (c.resources->cores < 1) throw ValidationError("resources.cores must be >= 1");
    }
}

ScenarioConfig load_config(const fs::path& path) {
    if (!fs::exists(path)) throw ParseError("config file '" + path.string() + "' does not exist");
    return load_from_root(parse_yaml(read_file(path), path.string()), path);
}

ScenarioConfig load_config_text(const std::string& text, const fs::path& origin) {
    return load_from_root(parse_yaml(text, origin.string()), origin);
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["pipeline"] = to_string(c.pipeline);
    j["platform_profile"] = c.platform_profile;
    j["provider"] = c.provider;
    j["mode"] = to_string(c.mode);
    j["seed"] = opt(c.seed);
    j["output_dir"] = opt(c.output_dir);
    j["skew_edge_ms"] = c.skew_edge_ms;
    j["blob_envelope_bytes"] = c.blob_envelope_bytes;

    const auto& w = c.workload;
    j["workload"] = {{"kind", to_string(w.kind)},
                     {"items", w.items},
                     {"devices", w.devices},
                     {"input_bytes_per_item", distribution_json(w.input_bytes_per_item)},
                     {"compute_ms", distribution_json(w.compute_ms)},
                     {"result_payload_bytes", distribution_json(w.result_payload_bytes)},
                     {"inter_item_gap_ms", distribution_json(w.inter_item_gap_ms)},
                     {"scalar_freq_hz", w.scalar_freq_hz},
                     {"scalar_interval_s", w.scalar_interval_s},
                     {"warmup_delay_s", w.warmup_delay_s}};
    j["link"] = {{"propagation_ms", distribution_json(c.link.propagation_ms)},
                 {"bandwidth_bytes_per_s",
                  c.link.bandwidth_bytes_per_s ? json(*c.link.bandwidth_bytes_per_s) : json("unlimited")},
                 {"per_message_overhead_bytes", c.link.per_message_overhead_bytes},
                 {"drop_probability", c.link.drop_probability}};
    j["hub"] = {{"mode", to_string(c.hub.mode)},
                {"window_s", opt(c.hub.window_s)},
                {"chunk_bytes", opt(c.hub.chunk_bytes)},
                {"holdback_s", c.hub.holdback_s},
                {"write_latency_ms", distribution_json(c.hub.write_latency_ms)},
                {"platform_faithful", c.hub.platform_faithful}};
    if (c.cloud_function) {
        const auto& f = *c.cloud_function;
        j["cloud_function"] = {{"trigger_overhead_ms", distribution_json(f.trigger_overhead_ms)},
                               {"exec_ms", distribution_json(f.exec_ms)},
                               {"result_write_ms", distribution_json(f.result_write_ms)},
                               {"memory_mb", f.memory_mb},
                               {"inter_upload_gap_s", distribution_json(f.inter_upload_gap_s)}};
    }
    if (c.resources) {
        const auto& p = *c.resources;
        j["resources"] = {{"cpu_pct", distribution_json(p.cpu_pct)},
                          {"ram_mb", distribution_json(p.ram_mb)},
                          {"platform_ram_delta_mb", p.platform_ram_delta_mb},
                          {"cores", p.cores}};
    }
    return j;
}

RateCard load_rate_card(const fs::path& path) {
    Reader r(flat_file(path), path.string());
    RateCard c;
    r.text("name", c.name);
    r.number("edge_runtime_usd_per_device_month", c.edge_runtime_usd_per_device_month);
    r.number("storage_usd_per_gb_month", c.storage_usd_per_gb_month);
    r.number("put_usd_per_1k", c.put_usd_per_1k);
    r.number("get_usd_per_1k", c.get_usd_per_1k);
    r.number("function_usd_per_gb_s", c.function_usd_per_gb_s);
    r.number("function_usd_per_invocation", c.function_usd_per_invocation);
    r.reject_leftovers();
    validate(c);
    return c;
}

UsageScenario load_usage(const fs::path& path) {
    Reader r(flat_file(path), path.string());
    UsageScenario u;
    std::optional<double> interval;
    r.number("item_interval_s", interval);
    r.integer("messages_per_month", u.messages_per_month);
    if (interval) u.messages_per_month = messages_per_month(*interval);
    r.number("avg_message_kb", u.avg_message_kb);
    r.number("avg_input_kb", u.avg_input_kb);
    r.number("function_exec_ms", u.function_exec_ms);
    r.number("function_mem_gb", u.function_mem_gb);
    std::optional<double> mem_mb;
    r.number("function_mem_mb", mem_mb);
    if (mem_mb) u.function_mem_gb = *mem_mb / 1024.0;
    r.integer("devices", u.devices);
    r.reject_leftovers();
    validate(u);
    return u;
}

}  // namespace edgebench
