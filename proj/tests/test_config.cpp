#include <gtest/gtest.h>

#include "edgebench/config.hpp"
#include "edgebench/error.hpp"
#include "test_util.hpp"

using namespace edgebench;
using testutil::TempDir;
using testutil::write_file;

namespace {

const char* kMinimal = R"(pipeline: edge
platform_profile: test
seed: 3
workload:
  kind: image
  items: 5
  compute_ms: {uniform: [10, 20]}
  result_payload_bytes: 752
link:
  propagation_ms: {normal: [20, 2]}
  bandwidth_bytes_per_s: unlimited
hub:
  mode: immediate
  write_latency_ms: {empirical: [100, 120]}
)";

std::string what_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(LoadConfig, ShippedGreengrassImage) {
    const auto c = load_config(testutil::scenario("greengrass-image"));
    EXPECT_EQ(c.platform_profile, "greengrass");
    EXPECT_EQ(c.pipeline, PipelineKind::edge);
    EXPECT_EQ(c.workload.kind, WorkloadKind::image);
    EXPECT_EQ(c.workload.items, 500);
    EXPECT_EQ(c.link.per_message_overhead_bytes, 1048);
    EXPECT_EQ(c.hub.mode, HubMode::immediate);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_NO_THROW(validate(c));
}

TEST(LoadConfig, EveryShippedScenarioValidates) {
    int n = 0;
    for (const auto& e : std::filesystem::directory_iterator(testutil::fixtures() / "scenarios")) {
        SCOPED_TRACE(e.path().string());
        EXPECT_NO_THROW(validate(load_config(e.path())));
        ++n;
    }
    EXPECT_EQ(n, 12);
}

TEST(LoadConfig, DistributionForms) {
    TempDir dir;
    write_file(dir / "s.yaml", kMinimal);
    const auto c = load_config(dir / "s.yaml");
    EXPECT_EQ(c.workload.compute_ms, Distribution(Uniform{10, 20}));
    EXPECT_EQ(c.workload.result_payload_bytes, Distribution(Constant{752}));
    EXPECT_EQ(c.link.propagation_ms, Distribution(Normal{20, 2}));
    EXPECT_FALSE(c.link.bandwidth_bytes_per_s.has_value());
    EXPECT_EQ(c.hub.write_latency_ms, Distribution(Empirical{{100, 120}}));
}

TEST(LoadConfig, UnknownKeyNamesTypo) {
    TempDir dir;
    write_file(dir / "s.yaml", std::string(kMinimal) + "  windw_s: 60\n");
    EXPECT_THROW(load_config(dir / "s.yaml"), UnknownKey);
    const auto msg = what_of([&] { load_config(dir / "s.yaml"); });
    EXPECT_NE(msg.find("windw_s"), std::string::npos) << msg;
    EXPECT_NE(msg.find("s.yaml:15"), std::string::npos) << msg;
}

TEST(LoadConfig, UnknownTopLevelKey) {
    TempDir dir;
    write_file(dir / "s.yaml", std::string(kMinimal) + "colour: blue\n");
    EXPECT_THROW(load_config(dir / "s.yaml"), UnknownKey);
}

TEST(LoadConfig, PlatformFaithfulWindowMinimum) {
    TempDir dir;
    write_file(dir / "s.yaml", std::string(kMinimal) + "  window_s: 30\n  platform_faithful: true\n");
    // hub.mode stays immediate here, so switch it in a child file.
    write_file(dir / "c.yaml", "extends: s\nhub:\n  mode: batched\n  holdback_s: 60\n");
    EXPECT_THROW(load_config(dir / "c.yaml"), ValidationError);
    const auto msg = what_of([&] { load_config(dir / "c.yaml"); });
    EXPECT_NE(msg.find("60 s"), std::string::npos) << msg;
}

TEST(LoadConfig, ExtendsChildOverridesParent) {
    TempDir dir;
    write_file(dir / "profiles" / "base.yaml", kMinimal);
    write_file(dir / "scen" / "x.yaml", "extends: ../profiles/base\nseed: 9\nworkload:\n  items: 7\n");
    const auto c = load_config(dir / "scen" / "x.yaml");
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.workload.items, 7);
    EXPECT_EQ(c.workload.kind, WorkloadKind::image);  // inherited
}

TEST(LoadConfig, MissingProfile) {
    TempDir dir;
    write_file(dir / "x.yaml", "extends: nowhere\nseed: 1\n");
    EXPECT_THROW(load_config(dir / "x.yaml"), MissingProfile);
    EXPECT_NE(what_of([&] { load_config(dir / "x.yaml"); }).find("nowhere"), std::string::npos);
}

TEST(LoadConfig, ExtendsCycle) {
    TempDir dir;
    write_file(dir / "a.yaml", "extends: b\n");
    write_file(dir / "b.yaml", "extends: a\n");
    EXPECT_THROW(load_config(dir / "a.yaml"), ParseError);
}

TEST(LoadConfig, ParseErrorHasLocation) {
    TempDir dir;
    write_file(dir / "bad.yaml", "pipeline: edge\nworkload: [unclosed\n");
    EXPECT_THROW(load_config(dir / "bad.yaml"), ParseError);
    EXPECT_NE(what_of([&] { load_config(dir / "bad.yaml"); }).find("bad.yaml:"), std::string::npos);
}

TEST(LoadConfig, WrongTypeIsParseError) {
    TempDir dir;
    write_file(dir / "s.yaml", std::string(kMinimal) + "skew_edge_ms: soon\n");
    EXPECT_THROW(load_config(dir / "s.yaml"), ParseError);
}

TEST(LoadConfig, SeedRequiredInVirtualMode) {
    TempDir dir;
    std::string text = kMinimal;
    text.replace(text.find("seed: 3\n"), 8, "");
    write_file(dir / "s.yaml", text);
    EXPECT_THROW(validate(load_config(dir / "s.yaml")), ValidationError);
}

TEST(LoadConfig, CloudNeedsFunctionProfile) {
    TempDir dir;
    std::string text = kMinimal;
    text.replace(0, 14, "pipeline: cloud");
    write_file(dir / "t.yaml", text);
    EXPECT_THROW(validate(load_config(dir / "t.yaml")), ValidationError);
}

TEST(LoadConfig, JsonAccepted) {
    TempDir dir;
    const auto c = load_config(testutil::scenario("azureedge-audio"));
    write_file(dir / "c.json", to_json(c).dump(2));
    EXPECT_EQ(load_config(dir / "c.json"), c);
}

TEST(LoadConfig, RoundTripEveryFixture) {
    for (const auto& e : std::filesystem::directory_iterator(testutil::fixtures() / "scenarios")) {
        SCOPED_TRACE(e.path().string());
        const auto c = load_config(e.path());
        EXPECT_EQ(load_config_text(to_json(c).dump(), e.path()), c);
    }
}

TEST(LoadConfig, NullSectionDropsParent) {
    TempDir dir;
    write_file(dir / "base.yaml", std::string(kMinimal) + "resources:\n  cpu_pct: 50\n");
    write_file(dir / "x.yaml", "extends: base\nresources: null\n");
    EXPECT_TRUE(load_config(dir / "base.yaml").resources.has_value());
    EXPECT_FALSE(load_config(dir / "x.yaml").resources.has_value());
}

TEST(RateCard, ShippedFixture) {
    const auto card = load_rate_card(testutil::fixtures() / "ratecards" / "us-east-2018.yaml");
    EXPECT_EQ(card.name, "us-east-2018");
    EXPECT_DOUBLE_EQ(card.edge_runtime_usd_per_device_month, 0.2627);
}

TEST(Usage, IntervalOrCount) {
    TempDir dir;
    write_file(dir / "a.yaml", "item_interval_s: 10\nfunction_mem_mb: 3008\n");
    write_file(dir / "b.yaml", "messages_per_month: 259200\nfunction_mem_gb: 2.9375\n");
    const auto a = load_usage(dir / "a.yaml");
    const auto b = load_usage(dir / "b.yaml");
    EXPECT_EQ(a.messages_per_month, 259200);
    EXPECT_EQ(a, b);
    write_file(dir / "c.yaml", "messages_per_mnth: 1\n");
    EXPECT_THROW(load_usage(dir / "c.yaml"), UnknownKey);
}
