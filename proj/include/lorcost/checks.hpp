#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bidim.hpp"
#include "cache.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "hierarchy.hpp"
#include "layouts.hpp"
#include "locality.hpp"
#include "trace.hpp"

namespace lorcost {

struct Witness {
    std::string digest;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string detail;
};

struct CheckReport {
    static constexpr std::size_t max_witnesses = 16;

    std::string check_id;
    std::size_t cases_run = 0;
    std::size_t cases_passed = 0;
    double worst_violation = 0.0;
    std::vector<Witness> witnesses;
    std::map<std::string, double> baseline_values;

    bool pass() const noexcept { return cases_passed == cases_run; }
    bool vacuous() const noexcept { return cases_run == 0; }
};

/// Outcome of one case. `violation` is how far the failing side overshoots
/// (0 when the case passes).
struct CaseOutcome {
    bool ok = true;
    double violation = 0.0;
    Witness witness;
};

namespace detail {

inline void record(CheckReport& r, const CaseOutcome& c) {
    ++r.cases_run;
    if (c.ok) {
        ++r.cases_passed;
        return;
    }
    r.worst_violation = std::max(r.worst_violation, c.violation);
    if (r.witnesses.size() < CheckReport::max_witnesses) r.witnesses.push_back(c.witness);
}

inline void record_all(CheckReport& r, const std::vector<CaseOutcome>& cases) {
    for (const auto& c : cases) record(r, c);
}

inline std::string tag(const ExecutionSequence& e, const std::string& rest) {
    return (e.label.empty() ? std::string("trace") : e.label) + " " + rest;
}

inline double rel_tol(double scale, double eps) { return eps * std::max(1.0, std::abs(scale)); }

}  // namespace detail

/// Smoothed block-transfer cost of each query trace equals the LoR cost
/// under min(1, d/B): exactly as rationals, and within 1e-12 against the
/// floating point lor_cost.
inline CheckReport check_co_equivalence(const std::vector<ExecutionSequence>& corpus,
                                        const std::vector<std::uint64_t>& blocks) {
    CheckReport r;
    r.check_id = "co_jb";
    std::uint64_t reach = 1;
    for (const auto& e : corpus) {
        for (std::size_t i = 1; i < e.size(); ++i) reach = std::max(reach, distance(e[i], e[i - 1]));
    }
    std::vector<LocalityFunction> ells;
    for (auto b : blocks) ells.push_back(make_block_locality(b, reach));

    const std::size_t cases = corpus.size() * blocks.size();
    auto out = parallel_map(cases, [&](std::size_t c) {
        const auto& e = corpus[c / blocks.size()];
        const auto bi = c % blocks.size();
        const auto B = blocks[bi];
        const Rational smoothed = smoothed_co_query(e, B);
        std::int64_t num = 0;
        for (std::size_t i = 1; i < e.size(); ++i) {
            num += static_cast<std::int64_t>(std::min<std::uint64_t>(B, distance(e[i], e[i - 1])));
        }
        const Rational exact(num, static_cast<std::int64_t>(B));
        const double lor = lor_cost(e, ells[bi]);
        const double gap = std::abs(to_double(smoothed) - lor);
        CaseOutcome o;
        o.ok = smoothed == exact && gap <= detail::rel_tol(lor, 1e-12);
        o.violation = std::max(gap, std::abs(to_double(smoothed - exact)));
        o.witness = {digest(e), to_double(smoothed), lor, detail::tag(e, "B=" + std::to_string(B))};
        return o;
    });
    detail::record_all(r, out);
    return r;
}

/// Unshifted and smoothed block-transfer costs within a factor 2 of each
/// other in both directions, compared exactly.
inline CheckReport check_smoothing_factor(const std::vector<ExecutionSequence>& corpus,
                                          const std::vector<std::uint64_t>& blocks) {
    CheckReport r;
    r.check_id = "smoothing";
    const std::size_t cases = corpus.size() * blocks.size();
    auto out = parallel_map(cases, [&](std::size_t c) {
        const auto& e = corpus[c / blocks.size()];
        const auto B = blocks[c % blocks.size()];
        const Rational plain(static_cast<std::int64_t>(co_cost_query(e, B, 0)));
        const Rational smoothed = smoothed_co_query(e, B);
        CaseOutcome o;
        o.ok = plain <= smoothed * 2 && smoothed <= plain * 2;
        const Rational over = std::max(plain - smoothed * 2, smoothed - plain * 2);
        o.violation = std::max(0.0, to_double(over));
        o.witness = {digest(e), to_double(plain), to_double(smoothed), detail::tag(e, "B=" + std::to_string(B))};
        return o;
    });
    detail::record_all(r, out);
    return r;
}

struct CacheShape {
    std::uint64_t M = 0;
    std::uint64_t B = 1;
};

/// (factor * B^2, B) for every block size and factor.
inline std::vector<CacheShape> tall_grid(const std::vector<std::uint64_t>& blocks,
                                         const std::vector<std::uint64_t>& factors) {
    std::vector<CacheShape> out;
    for (auto B : blocks) {
        for (auto f : factors) out.push_back({f * B * B, B});
    }
    return out;
}

/// Two-finger cost under the bidimensional function of (M, B) against
/// smoothed LRU (equality within 1e-9 relative) and the sandwich
/// CO(M, B) <= two_finger <= 2 CO(M/2, B).
inline CheckReport check_equiv_lr(const std::vector<ExecutionSequence>& corpus, const std::vector<CacheShape>& grid) {
    CheckReport r;
    r.check_id = "equiv_lr";
    for (const auto& p : grid) make_lmb(p.M, p.B);  // tall-cache precondition

    struct Outcome {
        CaseOutcome c;
        bool equal = true, lower = true, upper = true;
        double gap = 0.0;
    };
    const std::size_t cases = corpus.size() * grid.size();
    auto out = parallel_map(cases, [&](std::size_t c) {
        const auto& e = corpus[c / grid.size()];
        const auto [M, B] = grid[c % grid.size()];
        const double tf = two_finger_cost(e, make_lmb(M, B)).total;
        const double lru = to_double(smoothed_cost(e, {M, B, Policy::lru}));
        const double co = to_double(smoothed_cost(e, {M, B, Policy::belady}));
        const double co_half = to_double(smoothed_cost(e, {M / 2, B, Policy::belady}));
        const double tol = detail::rel_tol(tf, 1e-9);
        Outcome o;
        o.gap = std::abs(tf - lru);
        o.equal = o.gap <= tol;
        o.lower = co <= tf + tol;
        o.upper = tf <= 2.0 * co_half + tol;
        o.c.ok = o.equal && o.lower && o.upper;
        o.c.violation = std::max({o.gap, co - tf, tf - 2.0 * co_half, 0.0});
        std::string what = o.equal ? "" : " two_finger!=lru";
        if (!o.lower) what += " co>two_finger";
        if (!o.upper) what += " two_finger>2co(M/2)=" + format_number(2.0 * co_half);
        o.c.witness = {digest(e), tf, lru,
                       detail::tag(e, "M=" + std::to_string(M) + " B=" + std::to_string(B) + what)};
        return o;
    });
    double equality_failures = 0, lower_failures = 0, upper_failures = 0, max_gap = 0;
    for (const auto& o : out) {
        detail::record(r, o.c);
        equality_failures += !o.equal;
        lower_failures += !o.lower;
        upper_failures += !o.upper;
        max_gap = std::max(max_gap, o.gap);
    }
    r.baseline_values["equality_failures"] = equality_failures;
    r.baseline_values["lower_bound_failures"] = lower_failures;
    r.baseline_values["upper_bound_failures"] = upper_failures;
    r.baseline_values["max_abs_gap"] = max_gap;
    return r;
}

/// LRU with twice the memory against the offline optimum:
/// smoothed LRU(2M, B) <= 2 * smoothed Belady(M, B), exactly.
inline CheckReport check_lru_competitive(const std::vector<ExecutionSequence>& corpus,
                                         const std::vector<CacheShape>& grid) {
    CheckReport r;
    r.check_id = "lru_competitive";
    for (const auto& p : grid) CacheConfig{p.M, p.B, Policy::belady}.validate();
    const std::size_t cases = corpus.size() * grid.size();
    auto out = parallel_map(cases, [&](std::size_t c) {
        const auto& e = corpus[c / grid.size()];
        const auto [M, B] = grid[c % grid.size()];
        const Rational lru = smoothed_cost(e, {2 * M, B, Policy::lru});
        const Rational opt = smoothed_cost(e, {M, B, Policy::belady});
        CaseOutcome o;
        o.ok = lru <= opt * 2;
        o.violation = std::max(0.0, to_double(lru - opt * 2));
        o.witness = {digest(e), to_double(lru), to_double(opt * 2),
                     detail::tag(e, "M=" + std::to_string(M) + " B=" + std::to_string(B))};
        return o;
    });
    detail::record_all(r, out);
    return r;
}

/// X/2 <= smoothed block-transfer cost <= 2X, X the dyadic estimate.
inline CheckReport check_dyadic_bound(const std::vector<ExecutionSequence>& corpus,
                                      const std::vector<std::uint64_t>& blocks) {
    CheckReport r;
    r.check_id = "dyadic";
    const std::size_t cases = corpus.size() * blocks.size();
    auto out = parallel_map(cases, [&](std::size_t c) {
        const auto& e = corpus[c / blocks.size()];
        const auto B = blocks[c % blocks.size()];
        const double s = to_double(smoothed_co_query(e, B));
        const double x = dyadic_estimate(jump_histogram(e), B);
        const double tol = detail::rel_tol(s, 1e-12);
        CaseOutcome o;
        o.ok = 0.5 * x <= s + tol && s <= 2.0 * x + tol;
        o.violation = std::max({0.5 * x - s, s - 2.0 * x, 0.0});
        o.witness = {digest(e), s, x, detail::tag(e, "B=" + std::to_string(B) + " (rhs = dyadic estimate)")};
        return o;
    });
    detail::record_all(r, out);
    return r;
}

/// For each l: the block decomposition reconstructs l on [0, N] within
/// 1e-9 (relative to max(1, l(d))), and the combined cost matches lor_cost
/// within 1e-9 relative on every trace. A non-concave table fails with the
/// offending index.
inline CheckReport check_decomposition(const std::vector<LocalityFunction>& ells,
                                       const std::vector<ExecutionSequence>& corpus) {
    CheckReport r;
    r.check_id = "decompose";
    for (const auto& f : ells) {
        std::optional<Decomposition> dec;
        CaseOutcome rec;
        try {
            dec = decompose(f);
            for (std::uint64_t d = 0; d <= f.N; ++d) {
                const double want = f.values[d];
                const double got = dec->reconstruct(d);
                const double err = std::abs(got - want);
                if (err > detail::rel_tol(want, 1e-9) && err > rec.violation) {
                    rec.ok = false;
                    rec.violation = err;
                    rec.witness = {f.family_tag, got, want, "reconstruction at d=" + std::to_string(d)};
                }
            }
        } catch (const NotConcave& ex) {
            rec.ok = false;
            rec.violation = 1.0;
            rec.witness = {f.family_tag, 0.0, 0.0, ex.what()};
        }
        detail::record(r, rec);
        if (!dec) continue;
        auto out = parallel_map(corpus.size(), [&](std::size_t i) {
            const auto& e = corpus[i];
            const double direct = lor_cost(e, f);
            const double combined = combined_lor_cost(e, *dec);
            const double err = std::abs(direct - combined);
            CaseOutcome o;
            o.ok = err <= detail::rel_tol(direct, 1e-9);
            o.violation = err / std::max(1.0, std::abs(direct));
            o.witness = {digest(e), combined, direct, detail::tag(e, f.family_tag)};
            return o;
        });
        detail::record_all(r, out);
    }
    return r;
}

struct HierarchyCase {
    Hierarchy hierarchy;
    double exponent = 0.0;  // C_i = B_i^exponent
    std::uint64_t growth = 2;
};

/// Geometric hierarchies B = 2, 4, 8 with M = B^2 and C = B^c.
inline std::vector<HierarchyCase> default_hierarchies(const std::vector<double>& exponents = {0.0, 1.0, 2.0}) {
    std::vector<HierarchyCase> out;
    for (double c : exponents) {
        GeometricSpec g;
        g.B0 = 2;
        g.growth = 2;
        g.depth = 3;
        g.gamma = WeightLaw::power;
        g.exponent = c;
        out.push_back({build_geometric(g), c, g.growth});
    }
    return out;
}

/// Per trace and hierarchy: LoR cost equals LRU cost (1e-9 relative), the
/// level-ratio bound holds, and lor/co <= 2 * growth^c.
inline CheckReport check_hierarchy(const std::vector<ExecutionSequence>& corpus,
                                   const std::vector<HierarchyCase>& hierarchies) {
    CheckReport r;
    r.check_id = "hierarchy";
    struct Outcome {
        CaseOutcome c;
        bool equal = true, bound = true, poly = true;
        double ratio = 0.0;
    };
    const std::size_t cases = corpus.size() * hierarchies.size();
    auto out = parallel_map(cases, [&](std::size_t k) {
        const auto& e = corpus[k / hierarchies.size()];
        const auto& hc = hierarchies[k % hierarchies.size()];
        const auto rep = level_ratio_bound(e, hc.hierarchy);
        const double lru = hierarchy_cost(e, hc.hierarchy, HierarchyModel::lru);
        const double limit = 2.0 * std::pow(static_cast<double>(hc.growth), hc.exponent);
        Outcome o;
        const double tol = detail::rel_tol(rep.lor_total, 1e-9);
        o.equal = std::abs(rep.lor_total - lru) <= tol;
        o.bound = rep.holds;
        o.ratio = rep.co_total > 0.0 ? rep.lor_total / rep.co_total : 0.0;
        o.poly = rep.lor_total <= limit * rep.co_total + tol;
        o.c.ok = o.equal && o.bound && o.poly;
        o.c.violation = std::max({std::abs(rep.lor_total - lru), rep.lor_total - limit * rep.co_total, 0.0});
        std::string what = o.equal ? "" : " lor!=lru(" + format_number(lru) + ")";
        if (!o.bound) what += " level-ratio bound";
        if (!o.poly) what += " lor/co>" + format_number(limit);
        o.c.witness = {digest(e), rep.lor_total, rep.co_total,
                       detail::tag(e, "c=" + format_number(hc.exponent) + what)};
        return o;
    });
    std::map<double, double> worst_ratio;
    double equality_failures = 0, bound_failures = 0, poly_failures = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto& o = out[k];
        detail::record(r, o.c);
        equality_failures += !o.equal;
        bound_failures += !o.bound;
        poly_failures += !o.poly;
        auto& w = worst_ratio[hierarchies[k % hierarchies.size()].exponent];
        w = std::max(w, o.ratio);
    }
    r.baseline_values["equality_failures"] = equality_failures;
    r.baseline_values["level_ratio_failures"] = bound_failures;
    r.baseline_values["poly_ratio_failures"] = poly_failures;
    for (const auto& [c, w] : worst_ratio) r.baseline_values["max_lor_over_co_c" + format_number(c)] = w;
    return r;
}

/// Default locality families for the vEB study, tabulated on [0, N].
inline std::vector<LocalityFunction> veb_localities(std::size_t N) {
    return {make_locality(LocalityKind::ram, N), make_locality(LocalityKind::log, N),
            make_locality(LocalityKind::sqrt, N), make_locality(LocalityKind::linear, N),
            make_locality(LocalityKind::block, N, 16)};
}

/// vEB worst case <= 4 * closed form for every l and height; vEB strictly
/// cheaper than bfs and preorder under log for heights 10..16; and on every
/// search of every layout with height <= 14, max jump * (d - 1) >= the
/// distance between the first and last position.
inline CheckReport check_veb(const std::vector<unsigned>& heights) {
    CheckReport r;
    r.check_id = "veb";
    if (heights.empty()) return r;
    const unsigned top = *std::max_element(heights.begin(), heights.end());
    const auto ells = veb_localities((std::size_t{1} << top) - 1);
    const auto log_ell = make_locality(LocalityKind::log, (std::size_t{1} << top) - 1);

    for (unsigned d : heights) {
        const auto veb = build_layout(LayoutKind::veb, d);
        const std::uint64_t n = veb.tree.nodes();
        auto out = parallel_map(ells.size(), [&](std::size_t k) {
            const auto w = worst_case_search_cost(veb, ells[k]);
            const double closed = veb_closed_form(n, ells[k]);
            CaseOutcome o;
            o.ok = w.cost <= 4.0 * closed;
            o.violation = std::max(0.0, w.cost - 4.0 * closed);
            o.witness = {"veb d=" + std::to_string(d), w.cost, 4.0 * closed,
                         ells[k].family_tag + " worst leaf " + std::to_string(w.leaf)};
            return o;
        });
        detail::record_all(r, out);

        if (d >= 10 && d <= 16) {
            const double v = worst_case_search_cost(veb, log_ell).cost;
            r.baseline_values["veb_log_worst_d" + std::to_string(d)] = v;
            for (auto kind : {LayoutKind::bfs, LayoutKind::preorder}) {
                const double other = worst_case_search_cost(build_layout(kind, d), log_ell).cost;
                CaseOutcome o;
                o.ok = v < other;
                o.violation = std::max(0.0, v - other);
                o.witness = {"veb d=" + std::to_string(d), v, other, std::string("log, vs ") + to_string(kind)};
                detail::record(r, o);
            }
        }

        if (d <= 14) {
            for (auto kind : {LayoutKind::veb, LayoutKind::bfs, LayoutKind::preorder, LayoutKind::inorder}) {
                const auto layout = kind == LayoutKind::veb ? veb : build_layout(kind, d);
                CaseOutcome o;
                for (std::uint64_t leaf = layout.tree.first_leaf(); leaf <= layout.tree.nodes() && o.ok; ++leaf) {
                    const auto t = search_trace(layout, leaf);
                    std::uint64_t longest = 0;
                    for (std::size_t i = 1; i < t.size(); ++i) longest = std::max(longest, distance(t[i], t[i - 1]));
                    const auto span = distance(t.accesses.back(), t.accesses.front());
                    if (d > 1 && longest * (d - 1) < span) {
                        o.ok = false;
                        o.violation = static_cast<double>(span) / (d - 1) - static_cast<double>(longest);
                        o.witness = {digest(t), static_cast<double>(longest), static_cast<double>(span) / (d - 1),
                                     std::string(to_string(kind)) + " leaf " + std::to_string(leaf)};
                    }
                }
                detail::record(r, o);
            }
        }
    }
    return r;
}

/// Runtime formulas of two algorithms on instance i, with constants 1 and
/// base-2 logarithms; loglog and logloglog are floored at 1.
struct BStabilityFormulas {
    double n = 16.0;

    double lg() const { return std::log2(n); }
    double lglg() const { return std::max(1.0, std::log2(lg())); }
    double lglglg() const { return std::max(1.0, std::log2(lglg())); }

    double A1(double i, double B) const {
        if (i < 2.0 || B < 2.0) throw InvalidParam(i < 2.0 ? "i" : "B", "must be >= 2");
        const double base = n * lg() * lglg() / std::log2(i);
        return std::min(base, i * base / B);
    }

    double A2(double B) const {
        if (B < 2.0) throw InvalidParam("B", "must be >= 2");
        return n * lg() * lglglg() / std::log2(B);
    }
};

inline BStabilityFormulas make_bstability(double n) {
    if (!(n >= 16.0)) throw InvalidParam("n", "must be >= 16");
    return {n};
}

struct Crossing {
    double n = 0.0;
    double i = 0.0;
    std::optional<double> b_lo;  // first grid B with A1 < A2
    std::optional<double> b_hi;  // first grid B with A1 > A2
};

/// Scans B = 2^j, j = 1..ceil(log2 n).
inline Crossing find_crossing(const BStabilityFormulas& f, double i) {
    Crossing c{f.n, i, std::nullopt, std::nullopt};
    const int top = static_cast<int>(std::ceil(f.lg()));
    for (int j = 1; j <= top; ++j) {
        const double B = std::ldexp(1.0, j);
        const double a1 = f.A1(i, B), a2 = f.A2(B);
        if (!c.b_lo && a1 < a2) c.b_lo = B;
        if (!c.b_hi && a1 > a2) c.b_hi = B;
    }
    return c;
}

/// A2(2) / A1(ceil(log n), 2): A2 over A1 at small B on a large instance.
inline double bstability_ratio_small_block(const BStabilityFormulas& f) {
    return f.A2(2.0) / f.A1(std::ceil(f.lg()), 2.0);
}

/// A2(n) / A1(4, n): A2 over A1 at B = n on a small instance.
inline double bstability_ratio_large_block(const BStabilityFormulas& f) { return f.A2(f.n) / f.A1(4.0, f.n); }

struct BStabilityRow {
    double n = 0.0;
    std::vector<Crossing> crossings;
    double ratio_small_block = 0.0;
    double ratio_large_block = 0.0;
};

inline std::vector<BStabilityRow> bstability_table(const std::vector<double>& ns) {
    std::vector<BStabilityRow> rows;
    for (double n : ns) {
        const auto f = make_bstability(n);
        BStabilityRow row;
        row.n = n;
        for (double i : {4.0, std::ceil(f.lg()), n}) row.crossings.push_back(find_crossing(f, i));
        row.ratio_small_block = bstability_ratio_small_block(f);
        row.ratio_large_block = bstability_ratio_large_block(f);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// One case per (n, i) crossing, plus one per consecutive pair of n for each
/// ratio (strict increase).
inline CheckReport demo_bstability(const std::vector<double>& ns) {
    CheckReport r;
    r.check_id = "bstability";
    const auto rows = bstability_table(ns);
    for (const auto& row : rows) {
        const std::string n = "n=2^" + format_number(std::log2(row.n));
        for (const auto& c : row.crossings) {
            CaseOutcome o;
            o.ok = c.b_lo.has_value() && c.b_hi.has_value();
            o.violation = o.ok ? 0.0 : 1.0;
            o.witness = {n, c.b_lo.value_or(0.0), c.b_hi.value_or(0.0), "i=" + format_number(c.i) + " (lhs B_lo, rhs B_hi)"};
            detail::record(r, o);
        }
        r.baseline_values["ratio_small_block_" + n] = row.ratio_small_block;
        r.baseline_values["ratio_large_block_" + n] = row.ratio_large_block;
    }
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        const std::string span = "n=2^" + format_number(std::log2(a.n)) + "->2^" + format_number(std::log2(b.n));
        for (int which = 0; which < 2; ++which) {
            const double x = which == 0 ? a.ratio_small_block : a.ratio_large_block;
            const double y = which == 0 ? b.ratio_small_block : b.ratio_large_block;
            CaseOutcome o;
            o.ok = y > x;
            o.violation = std::max(0.0, x - y);
            o.witness = {span, x, y, which == 0 ? "ratio at B=2" : "ratio at B=n"};
            detail::record(r, o);
        }
    }
    return r;
}

struct MemorySmoothRow {
    std::uint64_t factor = 1;
    std::uint64_t M = 0;
    double cost = 0.0;
    double ratio = 0.0;  // cost / cost at the base memory; 0 when that is 0
};

/// Smoothed optimal cost at memory factor * M, relative to memory M.
/// Descriptive only.
inline std::vector<MemorySmoothRow> memory_smooth_report(const ExecutionSequence& e, std::uint64_t block,
                                                         std::uint64_t memory,
                                                         const std::vector<std::uint64_t>& factors) {
    const double base = to_double(smoothed_cost(e, {memory, block, Policy::belady}));
    std::vector<MemorySmoothRow> rows;
    for (auto f : factors) {
        if (f < 1) throw InvalidParam("factor", "must be >= 1");
        MemorySmoothRow row;
        row.factor = f;
        row.M = f * memory;
        row.cost = to_double(smoothed_cost(e, {row.M, block, Policy::belady}));
        row.ratio = base > 0.0 ? row.cost / base : 0.0;
        rows.push_back(row);
    }
    return rows;
}

struct RunConfig {
    std::uint64_t seed = 7;

    std::size_t query_traces = 200;
    std::size_t query_max_len = 2000;
    std::uint64_t query_range = 4096;
    std::vector<std::uint64_t> co_blocks{1, 2, 3, 4, 7, 8, 16, 64};

    std::size_t general_traces = 100;
    std::size_t general_max_len = 1000;
    std::uint64_t general_range = 512;
    bool structured = true;
    std::vector<std::uint64_t> lr_blocks{2, 4, 8};
    std::vector<std::uint64_t> memory_factors{1, 2, 4};

    std::size_t decompose_traces = 50;
    std::size_t decompose_N = 4096;
    std::optional<std::vector<LocalityFunction>> localities;  // nullopt: the default families

    std::size_t hierarchy_traces = 50;
    std::vector<double> hierarchy_exponents{0.0, 1.0, 2.0};

    std::vector<unsigned> veb_heights{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
    std::vector<double> bstability_ns{1024.0, 1048576.0, 1099511627776.0};

    /// Every corpus and parameter list empty.
    static RunConfig empty() {
        RunConfig c;
        c.query_traces = c.general_traces = c.decompose_traces = c.hierarchy_traces = 0;
        c.structured = false;
        c.localities = std::vector<LocalityFunction>{};
        c.hierarchy_exponents.clear();
        c.veb_heights.clear();
        c.bstability_ns.clear();
        return c;
    }
};

inline std::vector<LocalityFunction> default_decompose_localities(std::size_t N) {
    std::vector<LocalityFunction> out{make_locality(LocalityKind::ram, N), make_locality(LocalityKind::log, N),
                                      make_locality(LocalityKind::sqrt, N), make_locality(LocalityKind::linear, N)};
    for (std::uint64_t b : {2, 3, 8, 64}) out.push_back(make_locality(LocalityKind::block, N, b));
    return out;
}

inline std::vector<ExecutionSequence> general_check_corpus(const RunConfig& cfg) {
    auto corpus = general_corpus(cfg.seed, cfg.general_traces, cfg.general_max_len, cfg.general_range);
    if (cfg.structured) {
        for (auto& e : structured_general_traces(cfg.seed)) corpus.push_back(std::move(e));
    }
    return corpus;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"bstability", "co_jb",          "decompose", "dyadic", "equiv_lr",
                                                "hierarchy",  "lru_competitive", "smoothing", "veb"};
    return names;
}

/// Runs one named check. Throws InvalidParam for an unknown name.
inline CheckReport run_suite(const std::string& name, const RunConfig& cfg) {
    auto query = [&] { return query_corpus(cfg.seed, cfg.query_traces, cfg.query_max_len, cfg.query_range); };
    if (name == "co_jb") return check_co_equivalence(query(), cfg.co_blocks);
    if (name == "smoothing") return check_smoothing_factor(query(), cfg.co_blocks);
    if (name == "dyadic") return check_dyadic_bound(query(), cfg.co_blocks);
    if (name == "equiv_lr") return check_equiv_lr(general_check_corpus(cfg), tall_grid(cfg.lr_blocks, cfg.memory_factors));
    if (name == "lru_competitive") {
        return check_lru_competitive(general_check_corpus(cfg), tall_grid(cfg.lr_blocks, cfg.memory_factors));
    }
    if (name == "decompose") {
        const auto corpus = general_corpus(cfg.seed + 1, cfg.decompose_traces, 2000, cfg.decompose_N);
        return check_decomposition(cfg.localities ? *cfg.localities : default_decompose_localities(cfg.decompose_N),
                                   corpus);
    }
    if (name == "hierarchy") {
        auto corpus = general_corpus(cfg.seed, cfg.hierarchy_traces, cfg.general_max_len, cfg.general_range);
        return check_hierarchy(corpus, default_hierarchies(cfg.hierarchy_exponents));
    }
    if (name == "veb") return check_veb(cfg.veb_heights);
    if (name == "bstability") return demo_bstability(cfg.bstability_ns);
    throw InvalidParam("suite", "unknown suite '" + name + "'");
}

/// Every check, ordered by check_id.
inline std::vector<CheckReport> run_all(const RunConfig& cfg = {}) {
    std::vector<CheckReport> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, cfg));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.check_id < b.check_id; });
    return out;
}

}  // namespace lorcost
