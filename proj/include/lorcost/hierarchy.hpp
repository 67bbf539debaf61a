#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bidim.hpp"
#include "cache.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "trace.hpp"

namespace lorcost {

struct Level {
    std::uint64_t M = 0;
    std::uint64_t B = 1;
    double C = 1.0;  // relative cost of a transfer at this level
};

/// Memory levels ordered by strictly increasing block size. Every level is a
/// tall cache (M >= B^2).
struct Hierarchy {
    std::vector<Level> levels;

    void validate() const {
        if (levels.empty()) throw InvalidParam("levels", "hierarchy needs at least one level");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& l = levels[i];
            CacheConfig{l.M, l.B, Policy::lru}.validate();
            if (l.M / l.B < l.B) throw TallCacheViolation(l.M, l.B);
            if (!(l.C > 0.0)) throw InvalidParam("C", "level weight must be positive");
            if (i > 0 && levels[i - 1].B >= l.B) throw InvalidParam("B", "levels must have strictly increasing B");
        }
    }
};

enum class MemoryLaw { square, scaled_square };
enum class WeightLaw { constant, linear, power };

/// B_i = B_0 * growth^i, M_i = mu(B_i), C_i = gamma(B_i) for i < depth.
struct GeometricSpec {
    std::uint64_t B0 = 2;
    std::uint64_t growth = 2;
    std::size_t depth = 1;
    MemoryLaw mu = MemoryLaw::square;
    std::uint64_t mu_scale = 1;  // a in M = a * B^2 (scaled_square)
    WeightLaw gamma = WeightLaw::constant;
    double exponent = 1.0;  // c in C = B^c (power)
};

inline Hierarchy build_geometric(const GeometricSpec& spec) {
    if (spec.depth < 1) throw InvalidParam("depth", "must be >= 1");
    if (spec.B0 < 1 || (spec.B0 & (spec.B0 - 1)) != 0) throw InvalidParam("B0", "must be a power of two");
    if (spec.growth < 2) throw InvalidParam("growth", "must be >= 2");
    if (spec.mu == MemoryLaw::scaled_square && spec.mu_scale < 1) throw InvalidParam("mu_scale", "must be >= 1");
    Hierarchy h;
    std::uint64_t b = spec.B0;
    for (std::size_t i = 0; i < spec.depth; ++i) {
        Level l;
        l.B = b;
        l.M = b * b * (spec.mu == MemoryLaw::scaled_square ? spec.mu_scale : 1);
        const double bd = static_cast<double>(b);
        switch (spec.gamma) {
            case WeightLaw::constant: l.C = 1.0; break;
            case WeightLaw::linear: l.C = bd; break;
            case WeightLaw::power: l.C = std::pow(bd, spec.exponent); break;
        }
        h.levels.push_back(l);
        b *= spec.growth;
    }
    h.validate();
    return h;
}

enum class HierarchyModel { co, lru, lor };

inline std::optional<HierarchyModel> parse_hierarchy_model(std::string_view s) {
    if (s == "co") return HierarchyModel::co;
    if (s == "lru") return HierarchyModel::lru;
    if (s == "lor") return HierarchyModel::lor;
    return std::nullopt;
}

/// Per-level costs, index-aligned with H.levels and unweighted.
inline std::vector<double> level_costs(const ExecutionSequence& e, const Hierarchy& h, HierarchyModel model) {
    h.validate();
    std::vector<double> out;
    out.reserve(h.levels.size());
    for (const auto& l : h.levels) {
        switch (model) {
            case HierarchyModel::co: out.push_back(to_double(smoothed_cost(e, {l.M, l.B, Policy::belady}))); break;
            case HierarchyModel::lru: out.push_back(to_double(smoothed_cost(e, {l.M, l.B, Policy::lru}))); break;
            case HierarchyModel::lor: out.push_back(two_finger_cost(e, make_lmb(l.M, l.B)).total); break;
        }
    }
    return out;
}

/// sum_i C_i * cost_i, accumulated in level order.
inline double hierarchy_cost(const ExecutionSequence& e, const Hierarchy& h, HierarchyModel model) {
    const auto costs = level_costs(e, h, model);
    double total = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) total += h.levels[i].C * costs[i];
    return total;
}

struct BoundReport {
    double lor_total = 0.0;
    double co_total = 0.0;
    double max_weight_ratio = 0.0;
    bool holds = false;
};

/// Checks lor_total <= 2 * max_i(C_i / C_{i-1}) * co_total.
inline BoundReport level_ratio_bound(const ExecutionSequence& e, const Hierarchy& h) {
    if (h.levels.size() < 2) throw InvalidParam("levels", "ratio bound needs at least two levels");
    BoundReport r;
    r.lor_total = hierarchy_cost(e, h, HierarchyModel::lor);
    r.co_total = hierarchy_cost(e, h, HierarchyModel::co);
    for (std::size_t i = 1; i < h.levels.size(); ++i) {
        r.max_weight_ratio = std::max(r.max_weight_ratio, h.levels[i].C / h.levels[i - 1].C);
    }
    r.holds = r.lor_total <= 2.0 * r.max_weight_ratio * r.co_total;
    return r;
}

/// CSV "M,B,C", one level per row in ascending B.
inline Hierarchy load_hierarchy_csv(std::istream& in) {
    Hierarchy h;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != "M,B,C") throw ParseError(lineno, line, "expected header");
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string m, b, c;
        if (!std::getline(row, m, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
            throw ParseError(lineno, line, "expected 'M,B,C'");
        }
        try {
            std::size_t used = 0;
            Level l;
            l.M = std::stoull(m, &used);
            if (used != m.size()) throw ParseError(lineno, m, "bad M");
            l.B = std::stoull(b, &used);
            if (used != b.size()) throw ParseError(lineno, b, "bad B");
            l.C = std::stod(c, &used);
            if (used != c.size()) throw ParseError(lineno, c, "bad C");
            h.levels.push_back(l);
        } catch (const std::logic_error&) {
            throw ParseError(lineno, line, "bad number");
        }
    }
    if (!header) throw ParseError(lineno, "", "missing header");
    h.validate();
    return h;
}

inline Hierarchy load_hierarchy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open hierarchy file '" + path + "'");
    return load_hierarchy_csv(in);
}

inline void save_hierarchy_csv(std::ostream& out, const Hierarchy& h) {
    out << "M,B,C\n";
    for (const auto& l : h.levels) out << l.M << ',' << l.B << ',' << format_number(l.C) << '\n';
}

}  // namespace lorcost
