#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "random.hpp"

namespace lorcost {

/// Memory location in words. Memory is an unbounded array starting at 0.
using Address = std::uint64_t;

/// An ordered list of accessed addresses, the input of every cost model.
struct ExecutionSequence {
    std::vector<Address> accesses;
    std::string label;

    std::size_t size() const noexcept { return accesses.size(); }
    bool empty() const noexcept { return accesses.empty(); }
    Address operator[](std::size_t i) const { return accesses[i]; }

    friend bool operator==(const ExecutionSequence& a, const ExecutionSequence& b) {
        return a.accesses == b.accesses;
    }
};

inline std::uint64_t distance(Address a, Address b) noexcept { return a > b ? a - b : b - a; }

/// True iff addresses never decrease. The empty trace is vacuously query-type.
inline bool is_query_type(const ExecutionSequence& e) noexcept {
    return std::is_sorted(e.accesses.begin(), e.accesses.end());
}

/// Reads one decimal address per line. Blank lines and lines starting with
/// '#' are skipped.
inline ExecutionSequence load_trace(std::istream& in) {
    ExecutionSequence out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        const auto first = sv.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        sv.remove_prefix(first);
        sv.remove_suffix(sv.size() - sv.find_last_not_of(" \t\r") - 1);
        if (sv.front() == '#') continue;
        if (sv.front() == '-') {
            const auto digits = sv.substr(1);
            if (!digits.empty() &&
                std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw NegativeAddress(lineno);
            }
            throw ParseError(lineno, std::string(sv), "not a non-negative integer");
        }
        Address value = 0;
        const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
        if (ec == std::errc::result_out_of_range) {
            throw ParseError(lineno, std::string(sv), "address out of range");
        }
        if (ec != std::errc() || ptr != sv.data() + sv.size()) {
            throw ParseError(lineno, std::string(sv), "not a non-negative integer");
        }
        out.accesses.push_back(value);
    }
    return out;
}

inline ExecutionSequence load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file '" + path + "'");
    auto e = load_trace(in);
    e.label = path;
    return e;
}

inline void save_trace(std::ostream& out, const ExecutionSequence& e) {
    for (Address a : e.accesses) out << a << '\n';
}

enum class TraceKind { scan, strided, stage_halving, disjoint_scan, binary_search, repeated_scan };

inline std::optional<TraceKind> parse_trace_kind(std::string_view name) {
    static const std::map<std::string_view, TraceKind> kinds{
        {"scan", TraceKind::scan},
        {"strided", TraceKind::strided},
        {"stage_halving", TraceKind::stage_halving},
        {"disjoint_scan", TraceKind::disjoint_scan},
        {"binary_search", TraceKind::binary_search},
        {"repeated_scan", TraceKind::repeated_scan},
    };
    if (auto it = kinds.find(name); it != kinds.end()) return it->second;
    return std::nullopt;
}

inline const char* to_string(TraceKind k) {
    switch (k) {
        case TraceKind::scan: return "scan";
        case TraceKind::strided: return "strided";
        case TraceKind::stage_halving: return "stage_halving";
        case TraceKind::disjoint_scan: return "disjoint_scan";
        case TraceKind::binary_search: return "binary_search";
        case TraceKind::repeated_scan: return "repeated_scan";
    }
    return "?";
}

/// Generator request. Parameter names per kind:
///   scan           n, start=0
///   strided        count, stride, start=0
///   stage_halving  B (power of two)
///   disjoint_scan  section_count, section_length, seed=0
///   binary_search  n, target (index into the sorted array)
///   repeated_scan  k, repetitions
struct TraceGenSpec {
    TraceKind kind = TraceKind::scan;
    std::map<std::string, std::int64_t> params;
};

namespace detail {

inline std::int64_t param(const TraceGenSpec& spec, const std::string& name,
                          std::optional<std::int64_t> fallback = std::nullopt) {
    if (auto it = spec.params.find(name); it != spec.params.end()) return it->second;
    if (fallback) return *fallback;
    throw InvalidParam(name, std::string("required for ") + to_string(spec.kind));
}

inline std::uint64_t size_param(const TraceGenSpec& spec, const std::string& name) {
    const auto v = param(spec, name);
    if (v < 1) throw InvalidParam(name, "must be >= 1");
    return static_cast<std::uint64_t>(v);
}

inline std::uint64_t offset_param(const TraceGenSpec& spec, const std::string& name) {
    const auto v = param(spec, name, 0);
    if (v < 0) throw InvalidParam(name, "must be >= 0");
    return static_cast<std::uint64_t>(v);
}

inline bool is_power_of_two(std::uint64_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

// Section placement for a disjoint scan such that no logical successor starts
// exactly one word after its predecessor ends; the trace then has exactly
// section_count - 1 non-unit jumps.
inline std::vector<std::uint64_t> disjoint_placement(std::uint64_t sections, std::uint64_t length,
                                                     std::uint64_t seed) {
    std::vector<std::uint64_t> place(sections);
    for (std::uint64_t i = 0; i < sections; ++i) place[i] = i;
    if (sections == 1) return place;
    Rng rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        rng.shuffle(place);
        bool ok = true;
        for (std::size_t j = 1; j < place.size() && ok; ++j) {
            const auto p = place[j - 1], q = place[j];
            if (q == p + 1) ok = false;
            if (length == 1 && q + 1 == p) ok = false;
        }
        if (ok) return place;
    }
    throw InvalidParam("section_count", "no placement keeps every section jump non-unit");
}

}  // namespace detail

inline ExecutionSequence generate(const TraceGenSpec& spec) {
    ExecutionSequence e;
    e.label = to_string(spec.kind);
    auto& a = e.accesses;
    switch (spec.kind) {
        case TraceKind::scan: {
            const auto n = detail::size_param(spec, "n");
            const auto start = detail::offset_param(spec, "start");
            a.reserve(n);
            for (std::uint64_t i = 0; i < n; ++i) a.push_back(start + i);
            break;
        }
        case TraceKind::strided: {
            const auto count = detail::size_param(spec, "count");
            const auto stride = detail::size_param(spec, "stride");
            const auto start = detail::offset_param(spec, "start");
            a.reserve(count);
            for (std::uint64_t i = 0; i < count; ++i) a.push_back(start + i * stride);
            break;
        }
        case TraceKind::stage_halving: {
            const auto block = detail::size_param(spec, "B");
            if (!detail::is_power_of_two(block)) throw InvalidParam("B", "must be a power of two");
            a.push_back(0);
            a.push_back(block);
            // Stage k touches the 2^(k-1) odd multiples of B/2^k.
            for (std::uint64_t parts = 2; parts <= block; parts *= 2) {
                const auto step = block / parts;
                for (std::uint64_t i = 1; i < parts; i += 2) a.push_back(i * step);
            }
            break;
        }
        case TraceKind::disjoint_scan: {
            const auto sections = detail::size_param(spec, "section_count");
            const auto length = detail::size_param(spec, "section_length");
            const auto seed = static_cast<std::uint64_t>(detail::param(spec, "seed", 0));
            const auto place = detail::disjoint_placement(sections, length, seed);
            a.reserve(sections * length);
            for (auto p : place) {
                for (std::uint64_t k = 0; k < length; ++k) a.push_back(p * length + k);
            }
            break;
        }
        case TraceKind::binary_search: {
            const auto n = detail::size_param(spec, "n");
            const auto target = detail::param(spec, "target");
            if (target < 0 || static_cast<std::uint64_t>(target) >= n) {
                throw InvalidParam("target", "must be an index in [0, n)");
            }
            const auto t = static_cast<std::uint64_t>(target);
            std::uint64_t lo = 0, hi = n - 1;
            while (true) {
                const auto mid = lo + (hi - lo) / 2;
                a.push_back(mid);
                if (mid == t) break;
                if (t < mid) hi = mid - 1;
                else lo = mid + 1;
            }
            break;
        }
        case TraceKind::repeated_scan: {
            const auto k = detail::size_param(spec, "k");
            const auto reps = detail::size_param(spec, "repetitions");
            a.reserve(k * reps);
            for (std::uint64_t r = 0; r < reps; ++r) {
                for (std::uint64_t i = 0; i < k; ++i) a.push_back(i);
            }
            break;
        }
    }
    return e;
}

/// Convenience wrappers for the common generators.
inline ExecutionSequence scan(std::uint64_t n, std::uint64_t start = 0) {
    return generate({TraceKind::scan, {{"n", static_cast<std::int64_t>(n)}, {"start", static_cast<std::int64_t>(start)}}});
}

inline ExecutionSequence stage_halving(std::uint64_t block) {
    return generate({TraceKind::stage_halving, {{"B", static_cast<std::int64_t>(block)}}});
}

inline ExecutionSequence binary_search(std::uint64_t n, std::uint64_t target) {
    return generate({TraceKind::binary_search,
                     {{"n", static_cast<std::int64_t>(n)}, {"target", static_cast<std::int64_t>(target)}}});
}

inline ExecutionSequence make_trace(std::initializer_list<Address> addrs) {
    return ExecutionSequence{std::vector<Address>(addrs), {}};
}

}  // namespace lorcost
