#include <gtest/gtest.h>

#include "edgebench/config.hpp"
#include "edgebench/cost.hpp"
#include "edgebench/error.hpp"
#include "test_util.hpp"

using namespace edgebench;

namespace {

RateCard fixture_card() { return load_rate_card(testutil::fixtures() / "ratecards" / "us-east-2018.yaml"); }
UsageScenario fixture_usage() { return load_usage(testutil::fixtures() / "usage" / "camera-image.yaml"); }

MicroUsd component(const CostBreakdown& b, const std::string& name) {
    for (const auto& c : b.components)
        if (c.name == name) return c.amount;
    ADD_FAILURE() << "no component " << name;
    return 0;
}

}  // namespace

TEST(Cost, MessagesPerMonth) {
    EXPECT_EQ(messages_per_month(10), 259200);
    EXPECT_THROW(messages_per_month(0), InvalidRate);
}

TEST(Cost, ReferenceEdgeTotal) {
    const auto e = edge_monthly_cost(fixture_card(), fixture_usage());
    EXPECT_EQ(format_usd(e.total), "1.5584");
    EXPECT_EQ(format_usd(component(e, "edge runtime")), "0.2627");
    EXPECT_EQ(format_usd(component(e, "result storage")), "0.0057");
    EXPECT_EQ(format_usd(component(e, "put requests")), "1.2900");
}

TEST(Cost, ReferenceCloudTotal) {
    const auto c = cloud_monthly_cost(fixture_card(), fixture_usage());
    EXPECT_NEAR(to_usd(c.total), 8.027, 0.005);
    EXPECT_NEAR(to_usd(component(c, "raw input storage")), 0.814, 0.001);
    EXPECT_EQ(format_usd(component(c, "get + 2x put requests")), "2.6900");
    EXPECT_EQ(format_usd(component(c, "function GB-s")), "4.5170");
}

TEST(Cost, ReferenceRatio) {
    const auto e = edge_monthly_cost(fixture_card(), fixture_usage());
    const auto c = cloud_monthly_cost(fixture_card(), fixture_usage());
    EXPECT_NEAR(to_usd(c.total) / to_usd(e.total), 5.2, 0.05);
}

TEST(Cost, TotalsAreComponentSums) {
    const auto e = edge_monthly_cost(fixture_card(), fixture_usage());
    MicroUsd sum = 0;
    for (const auto& c : e.components) sum += c.amount;
    EXPECT_EQ(sum, e.total);
}

TEST(Cost, ZeroMessagesOneDeviceIsRuntimeOnly) {
    auto u = fixture_usage();
    u.messages_per_month = 0;
    const auto e = edge_monthly_cost(fixture_card(), u);
    EXPECT_EQ(e.total, 262700);
}

TEST(Cost, ZeroSizesZeroExecIsRequestsOnly) {
    auto u = fixture_usage();
    u.avg_input_kb = 0;
    u.avg_message_kb = 0;
    u.function_exec_ms = 0;
    const auto c = cloud_monthly_cost(fixture_card(), u);
    EXPECT_EQ(c.total, component(c, "get + 2x put requests"));
}

TEST(Cost, DoublingMessagesDoublesVariableTerms) {
    const auto card = fixture_card();
    auto u = fixture_usage();
    const auto a = edge_monthly_cost(card, u);
    u.messages_per_month *= 2;
    const auto b = edge_monthly_cost(card, u);
    EXPECT_EQ(component(b, "edge runtime"), component(a, "edge runtime"));
    EXPECT_NEAR(component(b, "put requests"), 2 * component(a, "put requests"), 1);
    EXPECT_NEAR(component(b, "result storage"), 2 * component(a, "result storage"), 1);
}

TEST(Cost, LinearInMessages) {
    const auto card = fixture_card();
    auto u = fixture_usage();
    std::vector<MicroUsd> totals;
    for (std::int64_t m : {100000, 200000, 300000}) {
        u.messages_per_month = m;
        totals.push_back(cloud_monthly_cost(card, u).total);
    }
    EXPECT_NEAR(totals[2] - totals[1], totals[1] - totals[0], 4);
}

TEST(Cost, MonotoneInUsage) {
    const auto card = fixture_card();
    const auto base = fixture_usage();
    const auto e0 = edge_monthly_cost(card, base).total;
    const auto c0 = cloud_monthly_cost(card, base).total;
    auto bump = [&](auto field) {
        auto u = base;
        field(u);
        EXPECT_GE(edge_monthly_cost(card, u).total, e0);
        EXPECT_GE(cloud_monthly_cost(card, u).total, c0);
    };
    bump([](UsageScenario& u) { u.messages_per_month += 1000; });
    bump([](UsageScenario& u) { u.avg_message_kb *= 2; });
    bump([](UsageScenario& u) { u.avg_input_kb *= 2; });
    bump([](UsageScenario& u) { u.function_exec_ms *= 2; });
    bump([](UsageScenario& u) { u.function_mem_gb *= 2; });
    bump([](UsageScenario& u) { u.devices += 1; });
}

TEST(Cost, InvocationFeeAddsComponent) {
    auto card = fixture_card();
    card.function_usd_per_invocation = 0.0000002;
    const auto c = cloud_monthly_cost(card, fixture_usage());
    EXPECT_EQ(component(c, "function invocations"), 51840);
}

TEST(Bandwidth, ReferenceFigures) {
    const auto u = fixture_usage();
    EXPECT_NEAR(monthly_bandwidth(u, PipelineKind::edge) / (1024.0 * 1024.0), 253.125, 253.125 * 0.01);
    EXPECT_NEAR(monthly_bandwidth(u, PipelineKind::cloud) / (1024.0 * 1024.0 * 1024.0), 35.38, 35.38 * 0.01);
}

TEST(Bandwidth, ZeroMessages) {
    auto u = fixture_usage();
    u.messages_per_month = 0;
    EXPECT_EQ(monthly_bandwidth(u, PipelineKind::edge), 0);
    EXPECT_EQ(monthly_bandwidth(u, PipelineKind::cloud), 0);
}

TEST(Bandwidth, EdgeNotAboveCloud) {
    auto u = fixture_usage();
    for (double in : {1.0, 2.0, 143.12}) {
        u.avg_input_kb = in;
        EXPECT_LE(monthly_bandwidth(u, PipelineKind::edge), monthly_bandwidth(u, PipelineKind::cloud));
    }
}

TEST(Format, HalfEven) {
    EXPECT_EQ(format_usd(1558385), "1.5584");
    EXPECT_EQ(format_usd(15), "0.0000");
    EXPECT_EQ(format_usd(50), "0.0000");   // exact tie rounds to even 0
    EXPECT_EQ(format_usd(150), "0.0002");  // exact tie rounds to even 2
    EXPECT_EQ(format_usd(-150), "-0.0002");
    EXPECT_EQ(format_usd(1234567, 2), "1.23");
}

TEST(Validation, NegativeRejected) {
    auto card = fixture_card();
    card.put_usd_per_1k = -1;
    EXPECT_THROW(validate(card), ValidationError);
    auto u = fixture_usage();
    u.avg_input_kb = -1;
    EXPECT_THROW(validate(u), ValidationError);
}

TEST(Render, AdditiveTable) {
    const auto card = fixture_card();
    const auto u = fixture_usage();
    const auto text = render_cost_table(edge_monthly_cost(card, u), cloud_monthly_cost(card, u), u);
    EXPECT_NE(text.find("0.2627 + 0.0057 + 1.2900"), std::string::npos);
    EXPECT_NE(text.find("1.5584"), std::string::npos);
    EXPECT_NE(text.find("ratio"), std::string::npos);
}
