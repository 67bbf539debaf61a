#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
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

#include "errors.hpp"
#include "format.hpp"
#include "trace.hpp"

namespace lorcost {

/// Tabulated univariate locality function on [0, N]: the cost of a jump of
/// d words. Members of the locality class have l(0) = 0 and are
/// non-decreasing and subadditive; validate() checks all three.
struct LocalityFunction {
    std::size_t N = 0;
    std::vector<double> values;  // values[d] = l(d), size N + 1
    std::string family_tag;

    double operator()(std::uint64_t d) const { return values.at(d); }
};

enum class LocalityKind { ram, linear, log, sqrt, block };

inline std::optional<LocalityKind> parse_locality_kind(std::string_view name) {
    if (name == "ram") return LocalityKind::ram;
    if (name == "linear") return LocalityKind::linear;
    if (name == "log") return LocalityKind::log;
    if (name == "sqrt") return LocalityKind::sqrt;
    if (name == "block") return LocalityKind::block;
    return std::nullopt;
}

/// ram: 1 per non-zero jump. linear: d. log: 1 + log2(d). sqrt: sqrt(d).
/// block: min(1, d/B), whose LoR cost is the smoothed block-transfer count.
inline LocalityFunction make_locality(LocalityKind kind, std::size_t N, std::uint64_t block = 0) {
    if (N < 1) throw InvalidParam("N", "must be >= 1");
    LocalityFunction f;
    f.N = N;
    f.values.resize(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d) {
        const auto x = static_cast<double>(d);
        switch (kind) {
            case LocalityKind::ram: f.values[d] = 1.0; break;
            case LocalityKind::linear: f.values[d] = x; break;
            case LocalityKind::log: f.values[d] = 1.0 + std::log2(x); break;
            case LocalityKind::sqrt: f.values[d] = std::sqrt(x); break;
            case LocalityKind::block:
                if (block < 1) throw InvalidParam("B", "block locality needs B >= 1");
                f.values[d] = std::min(1.0, x / static_cast<double>(block));
                break;
        }
    }
    switch (kind) {
        case LocalityKind::ram: f.family_tag = "ram"; break;
        case LocalityKind::linear: f.family_tag = "linear"; break;
        case LocalityKind::log: f.family_tag = "log"; break;
        case LocalityKind::sqrt: f.family_tag = "sqrt"; break;
        case LocalityKind::block: f.family_tag = "block:" + std::to_string(block); break;
    }
    return f;
}

inline LocalityFunction make_block_locality(std::uint64_t block, std::size_t N) {
    return make_locality(LocalityKind::block, N, block);
}

inline LocalityFunction locality_from_table(std::vector<double> values, std::string tag = "table") {
    if (values.size() < 2) throw InvalidParam("values", "table must cover d = 0..N with N >= 1");
    LocalityFunction f;
    f.N = values.size() - 1;
    f.values = std::move(values);
    f.family_tag = std::move(tag);
    return f;
}

struct Violation {
    std::size_t x = 0;
    std::size_t y = 0;
    std::string detail;
};

struct ValidityReport {
    bool valid = true;
    std::vector<Violation> violations;
};

/// Exhaustive check of l(0) = 0, monotonicity and subadditivity over all
/// O(N^2) pairs. Violations are returned, never thrown.
inline ValidityReport validate(const LocalityFunction& f) {
    ValidityReport r;
    const auto& v = f.values;
    auto slack = [](double rhs) { return 1e-12 * std::max(1.0, std::abs(rhs)); };
    if (v.empty()) {
        r.valid = false;
        r.violations.push_back({0, 0, "empty table"});
        return r;
    }
    if (v[0] != 0.0) {
        r.violations.push_back({0, 0, "l(0)=" + format_number(v[0]) + " != 0"});
    }
    for (std::size_t d = 0; d + 1 < v.size(); ++d) {
        if (v[d + 1] < 0.0 || v[d] > v[d + 1] + slack(v[d + 1])) {
            r.violations.push_back({d, d + 1,
                                    "not non-decreasing: l(" + std::to_string(d) + ")=" +
                                        format_number(v[d]) + " > l(" + std::to_string(d + 1) +
                                        ")=" + format_number(v[d + 1])});
        }
    }
    for (std::size_t x = 1; x < v.size(); ++x) {
        for (std::size_t y = x; x + y < v.size(); ++y) {
            const double rhs = v[x] + v[y];
            if (v[x + y] > rhs + slack(rhs)) {
                r.violations.push_back({x, y,
                                        "not subadditive: l(" + std::to_string(x + y) + ")=" +
                                            format_number(v[x + y]) + " > l(" + std::to_string(x) +
                                            ")+l(" + std::to_string(y) + ")=" + format_number(rhs)});
            }
        }
    }
    r.valid = r.violations.empty();
    return r;
}

/// Sum of l(|e_i - e_{i-1}|) over transitions. The first access is free.
inline double lor_cost(const ExecutionSequence& e, const LocalityFunction& f) {
    double total = 0.0;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const auto d = distance(e[i], e[i - 1]);
        if (d > f.N) throw DistanceOutOfDomain(i + 1, d, f.N);
        total += f.values[d];
    }
    return total;
}

/// Non-negative combination of block functions: sum of alpha * min(1, d/beta).
struct Decomposition {
    struct Term {
        double alpha = 0.0;
        std::size_t beta = 1;
    };
    std::vector<Term> terms;
    std::size_t source_N = 0;

    double reconstruct(std::uint64_t d) const {
        double s = 0.0;
        for (const auto& t : terms) {
            s += t.alpha * std::min(1.0, static_cast<double>(d) / static_cast<double>(t.beta));
        }
        return s;
    }
};

/// Writes l as a sum of alpha_i * min(1, d/i) with alpha_i = i * gamma_i and
/// gamma_i = 2l(i) - l(i+1) - l(i-1), taking l(N+1) = l(N). Exact on [1, N]
/// whenever every gamma_i is non-negative (l concave); throws NotConcave
/// otherwise. Only non-zero terms are kept.
inline Decomposition decompose(const LocalityFunction& f) {
    constexpr double concavity_slack = 1e-12;
    if (f.values.empty() || f.values[0] != 0.0) throw InvalidParam("l", "l(0) must be 0");
    Decomposition out;
    out.source_N = f.N;
    const auto& v = f.values;
    for (std::size_t i = 1; i <= f.N; ++i) {
        const double next = i == f.N ? v[f.N] : v[i + 1];
        double gamma = 2.0 * v[i] - next - v[i - 1];
        if (gamma < -concavity_slack) throw NotConcave(i);
        if (gamma <= 0.0) continue;
        out.terms.push_back({static_cast<double>(i) * gamma, i});
    }
    return out;
}

/// Evaluates sum_k alpha_k * lor_cost(E, min(1, d/beta_k)). Each block cost is
/// read off prefix sums of the jump-distance histogram, so the work is
/// O(|E| + N + terms).
inline double combined_lor_cost(const ExecutionSequence& e, const Decomposition& dec) {
    if (e.size() < 2) return 0.0;
    const std::size_t N = dec.source_N;
    std::vector<double> count(N + 1, 0.0);
    for (std::size_t i = 1; i < e.size(); ++i) {
        const auto d = distance(e[i], e[i - 1]);
        if (d >= N) throw DistanceOutOfDomain(i + 1, d, N);
        count[d] += 1.0;
    }
    // below[b] = #jumps with d < b, weighted[b] = sum of d over those jumps.
    std::vector<double> below(N + 2, 0.0), weighted(N + 2, 0.0);
    for (std::size_t d = 0; d <= N; ++d) {
        below[d + 1] = below[d] + count[d];
        weighted[d + 1] = weighted[d] + count[d] * static_cast<double>(d);
    }
    const double jumps = below[N + 1];
    double total = 0.0;
    for (const auto& t : dec.terms) {
        const double partial = weighted[t.beta] / static_cast<double>(t.beta);
        const double saturated = jumps - below[t.beta];
        total += t.alpha * (partial + saturated);
    }
    return total;
}

/// Counts of transitions by dyadic distance class: bucket i holds jumps with
/// 2^i <= d < 2^(i+1). Repeats (d = 0) are counted separately.
struct JumpHistogram {
    std::vector<std::uint64_t> buckets;
    std::uint64_t zero_jumps = 0;

    std::uint64_t bucket(std::size_t i) const { return i < buckets.size() ? buckets[i] : 0; }

    std::uint64_t total() const {
        std::uint64_t s = zero_jumps;
        for (auto b : buckets) s += b;
        return s;
    }
};

inline JumpHistogram jump_histogram(const ExecutionSequence& e) {
    JumpHistogram h;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const auto d = distance(e[i], e[i - 1]);
        if (d == 0) {
            ++h.zero_jumps;
            continue;
        }
        const auto idx = static_cast<std::size_t>(std::bit_width(d) - 1);
        if (h.buckets.size() <= idx) h.buckets.resize(idx + 1, 0);
        ++h.buckets[idx];
    }
    return h;
}

/// sum_i J'(2^i) * min(1, 2^i / B): the dyadic estimate of the smoothed
/// block-transfer cost.
inline double dyadic_estimate(const JumpHistogram& h, std::uint64_t block) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.buckets.size(); ++i) {
        const double scale = std::min(1.0, std::ldexp(1.0, static_cast<int>(i)) / static_cast<double>(block));
        s += static_cast<double>(h.buckets[i]) * scale;
    }
    return s;
}

/// CSV with header "d,value" and rows d = 0..N in order.
inline LocalityFunction load_locality_csv(std::istream& in, std::string tag = "file") {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != "d,value") throw ParseError(lineno, line, "expected header");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(lineno, line, "expected 'd,value'");
        std::size_t d = 0;
        const auto ds = std::string_view(line).substr(0, comma);
        auto [p1, e1] = std::from_chars(ds.data(), ds.data() + ds.size(), d);
        if (e1 != std::errc() || p1 != ds.data() + ds.size()) throw ParseError(lineno, std::string(ds), "bad distance");
        if (d != values.size()) throw ParseError(lineno, std::string(ds), "rows must list d = 0..N in order");
        const std::string vs = line.substr(comma + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(vs, &used);
        } catch (const std::exception&) {
            throw ParseError(lineno, vs, "bad value");
        }
        if (used != vs.size()) throw ParseError(lineno, vs, "bad value");
        values.push_back(value);
    }
    if (!header) throw ParseError(lineno, "", "missing header");
    return locality_from_table(std::move(values), std::move(tag));
}

inline LocalityFunction load_locality_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open locality file '" + path + "'");
    return load_locality_csv(in, "file:" + path);
}

inline void save_locality_csv(std::ostream& out, const LocalityFunction& f) {
    out << "d,value\n";
    for (std::size_t d = 0; d < f.values.size(); ++d) out << d << ',' << format_number(f.values[d]) << '\n';
}

}  // namespace lorcost
