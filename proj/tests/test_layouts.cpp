#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include <lorcost/layouts.hpp>

using namespace lorcost;

namespace {

std::vector<std::uint64_t> positions(const Layout& l) {
    return std::vector<std::uint64_t>(l.position.begin() + 1, l.position.end());
}

}  // namespace

TEST(BuildLayout, VebSmall) {
    EXPECT_EQ(positions(build_layout(LayoutKind::veb, 1)), (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(positions(build_layout(LayoutKind::veb, 2)), (std::vector<std::uint64_t>{0, 1, 2}));
    EXPECT_EQ(positions(build_layout(LayoutKind::veb, 3)), (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(BuildLayout, VebFour) {
    // Top two levels (1,2,3), then the four 3-node bottom trees left to right.
    EXPECT_EQ(positions(build_layout(LayoutKind::veb, 4)),
              (std::vector<std::uint64_t>{0, 1, 2, 3, 6, 9, 12, 4, 5, 7, 8, 10, 11, 13, 14}));
}

TEST(BuildLayout, OtherKinds) {
    EXPECT_EQ(positions(build_layout(LayoutKind::bfs, 3)), (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(positions(build_layout(LayoutKind::preorder, 3)), (std::vector<std::uint64_t>{0, 1, 4, 2, 3, 5, 6}));
    EXPECT_EQ(positions(build_layout(LayoutKind::inorder, 3)), (std::vector<std::uint64_t>{3, 1, 5, 0, 2, 4, 6}));
}

TEST(BuildLayout, HeightRange) {
    EXPECT_THROW(build_layout(LayoutKind::veb, 0), InvalidParam);
    EXPECT_THROW(build_layout(LayoutKind::bfs, 25), InvalidParam);
}

TEST(BuildLayout, EveryLayoutIsAPermutation) {
    for (auto kind : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder, LayoutKind::inorder}) {
        for (unsigned d = 1; d <= 16; ++d) {
            const auto l = build_layout(kind, d);
            std::vector<bool> seen(l.tree.nodes(), false);
            for (std::uint64_t v = 1; v <= l.tree.nodes(); ++v) {
                ASSERT_LT(l.position[v], l.tree.nodes());
                ASSERT_FALSE(seen[l.position[v]]);
                seen[l.position[v]] = true;
            }
        }
    }
}

TEST(IsForward, Examples) {
    EXPECT_TRUE(is_forward(build_layout(LayoutKind::veb, 4)));
    EXPECT_TRUE(is_forward(build_layout(LayoutKind::bfs, 4)));
    EXPECT_FALSE(is_forward(build_layout(LayoutKind::inorder, 2)));
    for (unsigned d = 2; d <= 12; ++d) {
        for (auto kind : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder}) {
            const auto l = build_layout(kind, d);
            EXPECT_TRUE(l.forward);
            EXPECT_EQ(l.position[1], 0u);
        }
        EXPECT_FALSE(build_layout(LayoutKind::inorder, d).forward);
    }
}

TEST(SearchTrace, Examples) {
    EXPECT_EQ(search_trace(build_layout(LayoutKind::veb, 2), 2).accesses, (std::vector<Address>{0, 1}));
    EXPECT_EQ(search_trace(build_layout(LayoutKind::bfs, 3), 7).accesses, (std::vector<Address>{0, 2, 6}));
    EXPECT_EQ(search_trace(build_layout(LayoutKind::bfs, 1), 1).accesses, (std::vector<Address>{0}));
    EXPECT_THROW(search_trace(build_layout(LayoutKind::bfs, 3), 3), NotALeaf);
    EXPECT_THROW(search_trace(build_layout(LayoutKind::bfs, 3), 8), NotALeaf);
}

TEST(WorstCase, Examples) {
    const auto w = worst_case_search_cost(build_layout(LayoutKind::veb, 2), make_locality(LocalityKind::linear, 3));
    EXPECT_EQ(w.cost, 2.0);
    EXPECT_EQ(w.leaf, 3u);
    for (auto kind : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder, LayoutKind::inorder}) {
        for (unsigned d : {1u, 5u, 9u}) {
            const auto l = build_layout(kind, d);
            EXPECT_EQ(worst_case_search_cost(l, make_locality(LocalityKind::ram, l.tree.nodes())).cost, d - 1.0);
        }
    }
}

TEST(WorstCase, TiesGoToLowestLeaf) {
    const auto w = worst_case_search_cost(build_layout(LayoutKind::bfs, 4), make_locality(LocalityKind::ram, 15));
    EXPECT_EQ(w.leaf, 8u);
}

TEST(WorstCase, VebBeatsBfsUnderLog) {
    const auto f = make_locality(LocalityKind::log, 1023);
    EXPECT_LT(worst_case_search_cost(build_layout(LayoutKind::veb, 10), f).cost,
              worst_case_search_cost(build_layout(LayoutKind::bfs, 10), f).cost);
}

TEST(VebClosedForm, Ram) {
    const std::uint64_t n = (1u << 10) - 1;
    const double v = veb_closed_form(n, make_locality(LocalityKind::ram, n));
    const double lg = std::log2(double(n));
    double expect = 0;
    for (int k = 0; k <= 4; ++k) expect += 1.0 / (1 << k);
    EXPECT_DOUBLE_EQ(v, lg * expect);
    EXPECT_LT(v, 2 * lg);
}

TEST(VebClosedForm, BoundsWorstCase) {
    for (unsigned d : {10u, 16u}) {
        const std::uint64_t n = (std::uint64_t{1} << d) - 1;
        for (auto kind : {LocalityKind::log, LocalityKind::linear}) {
            const auto f = make_locality(kind, n);
            EXPECT_LE(worst_case_search_cost(build_layout(LayoutKind::veb, d), f).cost, 4 * veb_closed_form(n, f));
        }
    }
}

TEST(VebClosedForm, Preconditions) {
    EXPECT_THROW(veb_closed_form(0, make_locality(LocalityKind::ram, 4)), InvalidParam);
    EXPECT_THROW(veb_closed_form(7, make_locality(LocalityKind::ram, 4)), DistanceOutOfDomain);
    EXPECT_EQ(veb_closed_form(1, make_locality(LocalityKind::ram, 4)), 0.0);
}

TEST(SpanStats, Examples) {
    const auto b = span_stats(build_layout(LayoutKind::bfs, 3));
    EXPECT_EQ(b.mean_span, 4.5);
    EXPECT_EQ(b.min_span, 3u);
    EXPECT_EQ(b.max_span, 6u);
    EXPECT_EQ(span_stats(build_layout(LayoutKind::preorder, 3)).mean_span, 4.0);
    EXPECT_THROW(span_stats(build_layout(LayoutKind::inorder, 3)), NotForward);
}

TEST(SpanStats, PigeonholeAndMeanBounds) {
    for (auto kind : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder}) {
        for (unsigned d = 2; d <= 14; ++d) {
            const auto l = build_layout(kind, d);
            const auto s = span_stats(l);
            EXPECT_LE(double(s.min_span), s.mean_span);
            EXPECT_LE(s.mean_span, double(s.max_span));
            EXPECT_LE(s.max_span, l.tree.nodes() - 1);
            EXPECT_GE(s.max_span, std::uint64_t{1} << (d - 1));
            EXPECT_GE(s.mean_span, std::ldexp(1.0, int(d) - 2)) << to_string(kind) << " d=" << d;
        }
    }
}

TEST(LayoutCsv, Format) {
    std::ostringstream out;
    save_layout_csv(out, build_layout(LayoutKind::veb, 2));
    EXPECT_EQ(out.str(), "heap_index,position\n1,0\n2,1\n3,2\n");
}

TEST(LayoutKindNames, RoundTrip) {
    for (auto k : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder, LayoutKind::inorder}) {
        EXPECT_EQ(parse_layout_kind(to_string(k)), k);
    }
    EXPECT_FALSE(parse_layout_kind("eytzinger").has_value());
}
