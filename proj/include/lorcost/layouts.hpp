#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "locality.hpp"
#include "trace.hpp"

namespace lorcost {

/// Full binary search tree of the given height. Nodes are heap indices
/// 1..2^height - 1; the children of v are 2v and 2v+1.
struct FullBST {
    unsigned height = 1;

    std::uint64_t nodes() const noexcept { return (std::uint64_t{1} << height) - 1; }
    std::uint64_t first_leaf() const noexcept { return std::uint64_t{1} << (height - 1); }
    bool is_leaf(std::uint64_t v) const noexcept { return v >= first_leaf() && v <= nodes(); }
};

enum class LayoutKind { veb, bfs, preorder, inorder };

inline std::optional<LayoutKind> parse_layout_kind(std::string_view s) {
    if (s == "veb") return LayoutKind::veb;
    if (s == "bfs") return LayoutKind::bfs;
    if (s == "preorder") return LayoutKind::preorder;
    if (s == "inorder") return LayoutKind::inorder;
    return std::nullopt;
}

inline const char* to_string(LayoutKind k) {
    switch (k) {
        case LayoutKind::veb: return "veb";
        case LayoutKind::bfs: return "bfs";
        case LayoutKind::preorder: return "preorder";
        case LayoutKind::inorder: return "inorder";
    }
    return "?";
}

/// Embedding of a FullBST into memory positions [0, n).
struct Layout {
    FullBST tree;
    LayoutKind kind = LayoutKind::bfs;
    std::vector<std::uint64_t> position;  // position[v] for heap index v; slot 0 unused
    bool forward = false;

    std::uint64_t at(std::uint64_t v) const { return position.at(v); }
};

/// Every internal node sits before both of its children.
inline bool is_forward(const Layout& layout) {
    const auto n = layout.tree.nodes();
    for (std::uint64_t v = 1; 2 * v + 1 <= n; ++v) {
        if (layout.position[v] >= layout.position[2 * v] || layout.position[v] >= layout.position[2 * v + 1]) {
            return false;
        }
    }
    return true;
}

namespace detail {

// Lays out the `height` topmost levels of the subtree rooted at `root`,
// starting at position `next`.
inline void place_veb(std::vector<std::uint64_t>& pos, std::uint64_t root, unsigned height, std::uint64_t& next) {
    if (height == 1) {
        pos[root] = next++;
        return;
    }
    const unsigned top = (height + 1) / 2;
    const unsigned bottom = height - top;
    place_veb(pos, root, top, next);
    const std::uint64_t first = root << top;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << top); ++j) place_veb(pos, first + j, bottom, next);
}

inline void place_preorder(std::vector<std::uint64_t>& pos, std::uint64_t v, std::uint64_t n, std::uint64_t& next) {
    if (v > n) return;
    pos[v] = next++;
    place_preorder(pos, 2 * v, n, next);
    place_preorder(pos, 2 * v + 1, n, next);
}

inline void place_inorder(std::vector<std::uint64_t>& pos, std::uint64_t v, std::uint64_t n, std::uint64_t& next) {
    if (v > n) return;
    place_inorder(pos, 2 * v, n, next);
    pos[v] = next++;
    place_inorder(pos, 2 * v + 1, n, next);
}

}  // namespace detail

/// veb: the top ceil(h/2) levels are laid out first (recursively), followed
/// by the bottom subtrees from left to right (recursively). bfs is level
/// order; preorder and inorder are the usual traversals.
inline Layout build_layout(LayoutKind kind, unsigned height) {
    if (height < 1 || height > 24) throw InvalidParam("d", "tree height must be in [1, 24]");
    Layout out;
    out.tree.height = height;
    out.kind = kind;
    const auto n = out.tree.nodes();
    out.position.assign(n + 1, 0);
    std::uint64_t next = 0;
    switch (kind) {
        case LayoutKind::veb: detail::place_veb(out.position, 1, height, next); break;
        case LayoutKind::bfs:
            for (std::uint64_t v = 1; v <= n; ++v) out.position[v] = v - 1;
            break;
        case LayoutKind::preorder: detail::place_preorder(out.position, 1, n, next); break;
        case LayoutKind::inorder: detail::place_inorder(out.position, 1, n, next); break;
    }
    out.forward = is_forward(out);
    return out;
}

/// Positions along the root-to-leaf path ending at `leaf`.
inline ExecutionSequence search_trace(const Layout& layout, std::uint64_t leaf) {
    if (!layout.tree.is_leaf(leaf)) throw NotALeaf(leaf);
    ExecutionSequence e;
    e.accesses.resize(layout.tree.height);
    std::uint64_t v = leaf;
    for (std::size_t i = layout.tree.height; i-- > 0; v >>= 1) e.accesses[i] = layout.position[v];
    return e;
}

struct WorstCase {
    double cost = 0.0;
    std::uint64_t leaf = 0;
};

/// Maximum LoR cost over all root-to-leaf searches, lowest leaf on ties.
inline WorstCase worst_case_search_cost(const Layout& layout, const LocalityFunction& f) {
    WorstCase w;
    bool first = true;
    for (std::uint64_t leaf = layout.tree.first_leaf(); leaf <= layout.tree.nodes(); ++leaf) {
        const double c = lor_cost(search_trace(layout, leaf), f);
        if (first || c > w.cost) {
            w = {c, leaf};
            first = false;
        }
    }
    return w;
}

/// log2(n) * sum_{k=0}^{ceil(log2 log2 n)} l(min(n, 2^(2^k))) / 2^k, the
/// recursion bound for a search in a vEB layout of n = 2^d - 1 nodes.
inline double veb_closed_form(std::uint64_t n, const LocalityFunction& f) {
    if (n < 1) throw InvalidParam("n", "must be >= 1");
    if (n > f.N) throw DistanceOutOfDomain(0, n, f.N);
    const double lg = std::log2(static_cast<double>(n));
    if (lg <= 0.0) return 0.0;
    const int top = lg > 1.0 ? static_cast<int>(std::ceil(std::log2(lg))) : 0;
    double sum = 0.0;
    for (int k = 0; k <= top; ++k) {
        const unsigned exp = 1u << k;
        const std::uint64_t jump = exp >= 63 ? n : std::min<std::uint64_t>(n, std::uint64_t{1} << exp);
        sum += f(jump) / std::ldexp(1.0, k);
    }
    return lg * sum;
}

struct SpanStats {
    double mean_span = 0.0;
    std::uint64_t max_span = 0;
    std::uint64_t min_span = 0;
};

/// Span of a search = position(leaf) - position(root), over all leaves.
inline SpanStats span_stats(const Layout& layout) {
    if (!layout.forward) throw NotForward();
    SpanStats s;
    s.min_span = std::numeric_limits<std::uint64_t>::max();
    const auto root = layout.position[1];
    long double sum = 0.0;
    for (std::uint64_t leaf = layout.tree.first_leaf(); leaf <= layout.tree.nodes(); ++leaf) {
        const auto span = layout.position[leaf] - root;
        sum += span;
        s.max_span = std::max(s.max_span, span);
        s.min_span = std::min(s.min_span, span);
    }
    s.mean_span = static_cast<double>(sum / static_cast<long double>(layout.tree.first_leaf()));
    return s;
}

/// CSV "heap_index,position".
inline void save_layout_csv(std::ostream& out, const Layout& layout) {
    out << "heap_index,position\n";
    for (std::uint64_t v = 1; v <= layout.tree.nodes(); ++v) out << v << ',' << layout.position[v] << '\n';
}

}  // namespace lorcost
