#include <cmath>

#include <gtest/gtest.h>

#include <lorcost/checks.hpp>
#include <lorcost/report.hpp>

using namespace lorcost;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.query_traces = 20;
    c.query_max_len = 200;
    c.general_traces = 10;
    c.general_max_len = 150;
    c.decompose_traces = 5;
    c.decompose_N = 512;
    c.hierarchy_traces = 5;
    c.veb_heights = {4, 5, 6, 7, 8};
    return c;
}

}  // namespace

TEST(CheckCoEquivalence, PassesOnSeveralCorpora) {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto r = check_co_equivalence(query_corpus(seed, 20, 300, 4096), {1, 2, 3, 4, 7, 8, 16, 64});
        EXPECT_TRUE(r.pass());
        EXPECT_EQ(r.cases_run, 160u);
        EXPECT_EQ(r.worst_violation, 0.0);
    }
}

TEST(CheckCoEquivalence, TrivialTraces) {
    EXPECT_TRUE(check_co_equivalence({make_trace({9})}, {4}).pass());
    EXPECT_EQ(smoothed_co_query(make_trace({9}), 4), Rational(0));
    for (std::uint64_t B : {1, 3, 8}) {
        EXPECT_EQ(to_double(smoothed_co_query(scan(50), B)), 49.0 * std::min(1.0, 1.0 / double(B)));
    }
}

TEST(CheckSmoothingFactor, ScanAndRandomCorpora) {
    EXPECT_TRUE(check_smoothing_factor({scan(65), scan(200), scan(1000)}, {1, 2, 3, 4, 7, 8, 16, 64}).pass());
    EXPECT_TRUE(check_smoothing_factor(query_corpus(5, 30, 500, 4096), {1, 2, 4, 8, 64}).pass());
}

TEST(CheckSmoothingFactor, SameBlockTraceIsVacuous) {
    const auto r = check_smoothing_factor({make_trace({5, 5, 5})}, {4});
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.cases_run, 1u);
}

// A jump across one aligned boundary costs 1 unshifted but only 1/B smoothed.
TEST(CheckSmoothingFactor, FailsAcrossASingleBoundary) {
    const auto r = check_smoothing_factor({make_trace({3, 4})}, {4});
    EXPECT_FALSE(r.pass());
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].lhs, 1.0);
    EXPECT_EQ(r.witnesses[0].rhs, 0.25);
}

TEST(CheckEquivLr, InterleavedExamplePasses) {
    const auto r = check_equiv_lr({make_trace({0, 4, 2})}, {{16, 4}});
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(two_finger_cost(make_trace({0, 4, 2}), make_lmb(16, 4)).total, 2.0);
}

TEST(CheckEquivLr, StageHalving) {
    for (std::uint64_t B : {4, 8, 32}) {
        EXPECT_EQ(two_finger_cost(stage_halving(B), make_lmb(B * B, B)).total, 2.0);
    }
}

TEST(CheckEquivLr, ShortCacheIsRejected) { EXPECT_THROW(check_equiv_lr({scan(4)}, {{8, 4}}), TallCacheViolation); }

TEST(CheckEquivLr, FailuresCarryWitnesses) {
    const auto r = check_equiv_lr(general_corpus(3, 10, 200, 512), tall_grid({2, 4}, {1, 2}));
    EXPECT_EQ(r.cases_run, 40u);
    EXPECT_EQ(r.cases_passed == r.cases_run, r.witnesses.empty());
    for (const auto& w : r.witnesses) EXPECT_EQ(w.digest.size(), 16u);
    EXPECT_TRUE(r.baseline_values.count("equality_failures"));
}

TEST(CheckLruCompetitive, Examples) {
    ExecutionSequence thrash;
    for (int k = 0; k < 10; ++k) thrash.accesses.insert(thrash.accesses.end(), {0, 4, 8});
    EXPECT_TRUE(check_lru_competitive({thrash}, {{8, 4}}).pass());
    EXPECT_TRUE(check_lru_competitive({make_trace({1, 1, 1, 1})}, {{8, 4}}).pass());
    EXPECT_TRUE(check_lru_competitive(general_corpus(4, 20, 300, 512), tall_grid({2, 4, 8}, {1, 2, 4})).pass());
}

TEST(CheckDyadicBound, Examples) {
    EXPECT_TRUE(check_dyadic_bound({scan(100)}, {1, 2, 4, 8, 64}).pass());
    EXPECT_TRUE(check_dyadic_bound({generate({TraceKind::strided, {{"count", 100}, {"stride", 3}}})}, {1, 2, 4, 8, 64}).pass());
    EXPECT_TRUE(check_dyadic_bound(query_corpus(6, 30, 500, 4096), {1, 2, 3, 4, 7, 8, 16, 64}).pass());
    EXPECT_THROW(check_dyadic_bound({make_trace({2, 1})}, {2}), NotQueryType);
}

TEST(CheckDecomposition, DefaultFamiliesPass) {
    const auto r = check_decomposition(default_decompose_localities(512), general_corpus(1, 5, 200, 512));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.cases_run, 8u * 6u);
}

TEST(CheckDecomposition, CorruptedTableFailsWithWitness) {
    auto bad = make_locality(LocalityKind::log, 64);
    bad.values[10] = bad.values[9];  // flat step, then the curve resumes: not concave
    bad.family_tag = "corrupted";
    const auto r = check_decomposition({bad}, general_corpus(1, 3, 50, 64));
    EXPECT_FALSE(r.pass());
    ASSERT_FALSE(r.witnesses.empty());
    EXPECT_EQ(r.witnesses[0].digest, "corrupted");
    EXPECT_NE(r.witnesses[0].detail.find("concave"), std::string::npos);
}

TEST(CheckHierarchy, BoundsHoldAndBaselinesAreRecorded) {
    const auto r = check_hierarchy(general_corpus(2, 5, 200, 512), default_hierarchies());
    EXPECT_EQ(r.cases_run, 15u);
    EXPECT_EQ(r.baseline_values.at("level_ratio_failures"), 0.0);
    EXPECT_EQ(r.baseline_values.at("poly_ratio_failures"), 0.0);
    for (const char* c : {"max_lor_over_co_c0", "max_lor_over_co_c1", "max_lor_over_co_c2"}) {
        EXPECT_GT(r.baseline_values.at(c), 0.0);
    }
}

TEST(CheckVeb, SmallHeightsPass) {
    const auto r = check_veb({4, 5, 6, 7, 8, 10});
    EXPECT_TRUE(r.pass());
    EXPECT_TRUE(r.baseline_values.count("veb_log_worst_d10"));
}

TEST(BStability, Formulas) {
    const auto f = make_bstability(1024.0);
    const double L = 10, LL = std::log2(10.0), LLL = std::log2(LL);
    EXPECT_DOUBLE_EQ(f.A2(2.0), 1024 * L * LLL);
    EXPECT_DOUBLE_EQ(f.A1(4.0, 2.0), 1024 * L * LL / 2);
    EXPECT_DOUBLE_EQ(f.A1(4.0, 64.0), 4 * 1024 * L * LL / (64 * 2));
    // i = n, B = 2: the min picks n log n loglog n / log n.
    EXPECT_DOUBLE_EQ(f.A1(1024.0, 2.0), 1024 * L * LL / L);
    EXPECT_DOUBLE_EQ(bstability_ratio_small_block(f), LLL);
    EXPECT_DOUBLE_EQ(bstability_ratio_large_block(f), 1024 * LLL / (2 * L * LL));
}

TEST(BStability, GuardsAndDomain) {
    EXPECT_THROW(make_bstability(8.0), InvalidParam);
    const auto f = make_bstability(16.0);
    EXPECT_EQ(f.lglglg(), 1.0);
    EXPECT_THROW(f.A1(1.0, 2.0), InvalidParam);
    EXPECT_THROW(f.A2(1.0), InvalidParam);
}

TEST(BStability, CrossingsExist) {
    const auto f = make_bstability(std::ldexp(1.0, 20));
    const auto c = find_crossing(f, 2.0);
    EXPECT_TRUE(c.b_lo.has_value());
    EXPECT_TRUE(c.b_hi.has_value());
    const auto r = demo_bstability({std::ldexp(1.0, 10), std::ldexp(1.0, 20), std::ldexp(1.0, 40)});
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.cases_run, 9u + 4u);
}

TEST(MemorySmoothReport, RepeatedScanDropsOnceItFits) {
    const auto e = generate({TraceKind::repeated_scan, {{"k", 64}, {"repetitions", 16}}});
    const auto rows = memory_smooth_report(e, 4, 32, {1, 2, 4});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].ratio, 1.0);
    EXPECT_EQ(rows[2].M, 128u);
    EXPECT_EQ(rows[2].cost, 16.75);  // cold misses only: 16 or 17 blocks by shift
    EXPECT_LT(rows[2].ratio, rows[1].ratio);
    EXPECT_LT(rows[1].ratio, 1.0);
}

TEST(MemorySmoothReport, ScanAndEmpty) {
    for (const auto& row : memory_smooth_report(scan(100), 4, 16, {1, 2, 8})) EXPECT_EQ(row.ratio, 1.0);
    for (const auto& row : memory_smooth_report(ExecutionSequence{}, 4, 16, {1, 2})) {
        EXPECT_EQ(row.cost, 0.0);
        EXPECT_EQ(row.ratio, 0.0);
    }
}

TEST(RunAll, EmptyConfigIsVacuous) {
    const auto reports = run_all(RunConfig::empty());
    ASSERT_EQ(reports.size(), suite_names().size());
    for (const auto& r : reports) {
        EXPECT_TRUE(r.pass());
        EXPECT_TRUE(r.vacuous());
        EXPECT_EQ(to_json(r).at("note"), "0 cases");
    }
}

TEST(RunAll, CorruptedLocalityFailsDecompose) {
    auto cfg = RunConfig::empty();
    auto bad = make_locality(LocalityKind::sqrt, 128);
    bad.values[5] += 0.3;
    cfg.localities = std::vector<LocalityFunction>{bad};
    cfg.decompose_N = 128;
    cfg.decompose_traces = 3;
    const auto reports = run_all(cfg);
    for (const auto& r : reports) {
        if (r.check_id == "decompose") {
            EXPECT_FALSE(r.pass());
            EXPECT_FALSE(r.witnesses.empty());
        } else {
            EXPECT_TRUE(r.pass());
        }
    }
}

TEST(RunAll, OrderedAndDeterministic) {
    const auto cfg = small_config();
    const auto a = run_all(cfg);
    const auto b = run_all(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i > 0) {
            EXPECT_LT(a[i - 1].check_id, a[i].check_id);
        }
        EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
    }
}

TEST(RunSuite, UnknownName) { EXPECT_THROW(run_suite("nosuch", RunConfig::empty()), InvalidParam); }

TEST(Report, DocumentShape) {
    ReportDocument doc;
    doc.command = "check";
    doc.seeds = {7};
    const auto j = doc.to_json();
    EXPECT_EQ(j.at("schema_version"), "1");
    EXPECT_EQ(j.at("provenance").at("seeds")[0], 7);
    EXPECT_EQ(j.at("provenance").at("tool_version"), version);
    // Keys come out sorted.
    const auto text = doc.dump();
    EXPECT_LT(text.find("\"command\""), text.find("\"inputs\""));
    EXPECT_LT(text.find("\"provenance\""), text.find("\"schema_version\""));
}
