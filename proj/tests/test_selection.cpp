#include "dcpath/selection.hpp"

#include "dcpath/synthetic.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

using namespace dcpath;

namespace {

// A pool over a tiny named graph so label ordering is exercised.
struct PoolFixture {
    KnowledgeGraph kg;
    PathPool pool;

    PoolFixture() {
        GraphBuilder builder;
        builder.add("a", "alpha", "b").add("a", "beta", "b").add("a", "gamma", "b");
        kg = builder.build();
        add({relation("alpha")}, 6, 10, 3, 10);              // conf 0.6, cov 0.3
        add({relation("beta"), relation("gamma")}, 6, 10, 1, 20);  // conf 0.6, cov 0.05
        add({relation("beta")}, 9, 10, 9, 10);               // conf 0.9, cov 0.9
        add({relation("gamma"), relation("alpha")}, 3, 10, 8, 10);  // conf 0.3, cov 0.8
    }

    RelationId relation(const std::string& label) const { return kg.relations().find(label); }

    void add(std::vector<RelationId> rels, std::uint64_t support, std::uint64_t count,
             std::uint64_t covered, std::uint64_t pairs) {
        PathPoolEntry e;
        e.path.relations = std::move(rels);
        e.support_sum = support;
        e.count_sum = count;
        e.cover_sum = covered;
        e.pairs_seen = pairs;
        pool.append(std::move(e));
    }
};

}  // namespace

TEST(SelectionPresets, PaperValuesResolve) {
    SelectionThresholds nell = selection_preset("nell995");
    EXPECT_DOUBLE_EQ(nell.theta_c1, 0.3);
    EXPECT_DOUBLE_EQ(nell.theta_c2, 0.5);
    EXPECT_DOUBLE_EQ(nell.theta_p1, 0.01);
    EXPECT_DOUBLE_EQ(nell.theta_p2, 0.1);

    SelectionThresholds lowered = selection_preset("fb15k237-lowered");
    EXPECT_DOUBLE_EQ(lowered.theta_c1, 0.2);
    EXPECT_DOUBLE_EQ(lowered.theta_c2, 0.2);
    EXPECT_DOUBLE_EQ(lowered.theta_p1, 0.02);
    EXPECT_DOUBLE_EQ(lowered.theta_p2, 0.02);

    SelectionThresholds original = selection_preset("fb15k237-original");
    EXPECT_DOUBLE_EQ(original.theta_c2, 0.3);
    EXPECT_DOUBLE_EQ(original.theta_p2, 0.2);

    EXPECT_THROW(selection_preset("nosuch"), std::invalid_argument);
    EXPECT_EQ(selection_preset_names().size(), 3u);
}

TEST(SelectPaths, LowCoverageLongPathRejectedUnderNellThresholds) {
    PoolFixture fx;
    // Length-2 path with conf 0.6, cov 0.05: confidence clears 0.5 but
    // coverage misses 0.1.
    auto selected = select_paths(fx.pool, selection_preset("nell995"), fx.kg);
    for (const auto& s : selected) EXPECT_NE(s.column, 1u);
}

TEST(SelectPaths, AllZeroThresholdsKeepEverything) {
    PoolFixture fx;
    auto selected = select_paths(fx.pool, {}, fx.kg);
    EXPECT_EQ(selected.size(), fx.pool.size());
}

TEST(SelectPaths, OrderingIsConfidenceThenCoverageThenLabels) {
    PoolFixture fx;
    auto selected = select_paths(fx.pool, {}, fx.kg);
    ASSERT_EQ(selected.size(), 4u);
    EXPECT_EQ(selected[0].column, 2u);  // conf 0.9
    // conf 0.6 twice: cov 0.3 before cov 0.05.
    EXPECT_EQ(selected[1].column, 0u);
    EXPECT_EQ(selected[2].column, 1u);
    EXPECT_EQ(selected[3].column, 3u);  // conf 0.3
}

TEST(SelectPaths, TieBreakByLabelSequence) {
    GraphBuilder builder;
    builder.add("a", "zeta", "b").add("a", "eta", "b");
    KnowledgeGraph kg = builder.build();
    PathPool pool;
    PathPoolEntry z;
    z.path.relations = {kg.relations().find("zeta")};
    z.support_sum = z.count_sum = 1;
    z.cover_sum = z.pairs_seen = 1;
    PathPoolEntry e = z;
    e.path.relations = {kg.relations().find("eta")};
    pool.append(z);
    pool.append(e);
    auto selected = select_paths(pool, {}, kg);
    ASSERT_EQ(selected.size(), 2u);
    EXPECT_EQ(selected[0].column, 1u);  // "eta" < "zeta"
}

TEST(SelectPaths, RaisingAnyThresholdNeverAddsAPath) {
    SplitRng rng(31);
    for (int round = 0; round < 250; ++round) {
        PoolFixture fx;
        SelectionThresholds base{rng.next_unit(), rng.next_unit(), rng.next_unit(),
                                 rng.next_unit()};
        SelectionThresholds raised = base;
        switch (rng.next_below(4)) {
            case 0: raised.theta_c1 = base.theta_c1 + (1.0 - base.theta_c1) * rng.next_unit(); break;
            case 1: raised.theta_c2 = base.theta_c2 + (1.0 - base.theta_c2) * rng.next_unit(); break;
            case 2: raised.theta_p1 = base.theta_p1 + (1.0 - base.theta_p1) * rng.next_unit(); break;
            default: raised.theta_p2 = base.theta_p2 + (1.0 - base.theta_p2) * rng.next_unit(); break;
        }
        auto before = select_paths(fx.pool, base, fx.kg);
        auto after = select_paths(fx.pool, raised, fx.kg);
        ASSERT_LE(after.size(), before.size());
        for (const auto& kept : after) {
            bool was_there = false;
            for (const auto& prev : before) was_there |= prev.column == kept.column;
            ASSERT_TRUE(was_there);
        }
    }
}

TEST(SelectPaths, EmptyResultIsNotAnError) {
    PoolFixture fx;
    SelectionThresholds impossible{1.0, 1.0, 1.0, 1.0};
    auto selected = select_paths(fx.pool, impossible, fx.kg);
    EXPECT_TRUE(selected.empty());
}

TEST(SelectPaths, ThresholdsAreInclusive) {
    PoolFixture fx;
    // Exactly at the boundary of entry 2 (conf 0.9, cov 0.9).
    SelectionThresholds th{0.9, 1.0, 0.9, 1.0};
    auto selected = select_paths(fx.pool, th, fx.kg);
    ASSERT_EQ(selected.size(), 1u);
    EXPECT_EQ(selected[0].column, 2u);
}

TEST(SelectionReport, FlagsRejectionRules) {
    PoolFixture fx;
    std::ostringstream out;
    write_selection_report(out, fx.pool, selection_preset("nell995"), fx.kg);
    std::istringstream in(out.str());
    std::string line;
    std::size_t kept = 0, rejected = 0;
    bool saw_coverage_rule = false;
    while (std::getline(in, line)) {
        auto record = nlohmann::json::parse(line);
        if (record.at("kept").get<bool>()) {
            ++kept;
            EXPECT_EQ(record.at("rejected_by").get<std::string>(), "");
        } else {
            ++rejected;
            EXPECT_FALSE(record.at("rejected_by").get<std::string>().empty());
            if (record.at("column").get<std::size_t>() == 1)
                saw_coverage_rule = record.at("rejected_by").get<std::string>() == "coverage";
        }
    }
    EXPECT_EQ(kept + rejected, fx.pool.size());
    EXPECT_TRUE(saw_coverage_rule);
}

TEST(SelectionThresholdsValidate, RejectsOutOfRange) {
    SelectionThresholds bad{1.5, 0.0, 0.0, 0.0};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    SelectionThresholds negative{-0.1, 0.0, 0.0, 0.0};
    EXPECT_THROW(negative.validate(), std::invalid_argument);
}
