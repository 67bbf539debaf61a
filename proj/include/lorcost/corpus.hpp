#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "layouts.hpp"
#include "median.hpp"
#include "random.hpp"
#include "trace.hpp"

namespace lorcost {

/// FNV-1a over the addresses, as 16 hex digits.
inline std::string digest(const ExecutionSequence& e) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(e.size());
    for (auto a : e.accesses) mix(a);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline ExecutionSequence random_trace(Rng& rng, std::size_t length, std::uint64_t range) {
    ExecutionSequence e;
    e.accesses.reserve(length);
    for (std::size_t i = 0; i < length; ++i) e.accesses.push_back(rng.below(range));
    e.label = "random";
    return e;
}

/// Sorted random addresses: a non-decreasing (query-type) trace.
inline ExecutionSequence random_query_trace(Rng& rng, std::size_t length, std::uint64_t range) {
    auto e = random_trace(rng, length, range);
    std::sort(e.accesses.begin(), e.accesses.end());
    e.label = "random_query";
    return e;
}

/// Random walk with mostly short steps: general traces with real locality,
/// which uniform traces lack.
inline ExecutionSequence local_walk_trace(Rng& rng, std::size_t length, std::uint64_t range) {
    ExecutionSequence e;
    e.label = "local_walk";
    std::uint64_t x = rng.below(range);
    for (std::size_t i = 0; i < length; ++i) {
        e.accesses.push_back(x);
        const auto r = rng.below(16);
        if (r == 0) {
            x = rng.below(range);
        } else {
            const auto step = rng.below(9);
            x = std::min<std::uint64_t>(range - 1, x + step >= 4 ? x + step - 4 : 0);
        }
    }
    return e;
}

/// Pinned-seed corpus of sorted uniform traces with addresses in [0, range).
inline std::vector<ExecutionSequence> query_corpus(std::uint64_t seed, std::size_t count, std::size_t max_len,
                                                   std::uint64_t range) {
    Rng rng(seed);
    std::vector<ExecutionSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto len = static_cast<std::size_t>(rng.between(std::min<std::size_t>(10, max_len), max_len));
        out.push_back(random_query_trace(rng, len, range));
    }
    return out;
}

/// Pinned-seed corpus of general traces with addresses in [0, range):
/// uniform and locality-biased random traces.
inline std::vector<ExecutionSequence> general_corpus(std::uint64_t seed, std::size_t count, std::size_t max_len,
                                                     std::uint64_t range) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<ExecutionSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto len = static_cast<std::size_t>(rng.between(std::min<std::size_t>(10, max_len), max_len));
        out.push_back(i % 2 == 0 ? random_trace(rng, len, range) : local_walk_trace(rng, len, range));
    }
    return out;
}

/// Structured general traces with addresses below 512.
inline std::vector<ExecutionSequence> structured_general_traces(std::uint64_t seed) {
    std::vector<ExecutionSequence> out;
    out.push_back(make_trace({0, 4, 2}));
    out.push_back(stage_halving(256));
    out.push_back(generate({TraceKind::disjoint_scan, {{"section_count", 16}, {"section_length", 16}, {"seed", static_cast<std::int64_t>(seed)}}}));
    out.push_back(generate({TraceKind::repeated_scan, {{"k", 64}, {"repetitions", 8}}}));
    out.push_back(binary_search(500, 0));
    out.push_back(binary_search(500, 377));
    {
        Rng rng(seed);
        std::vector<std::int64_t> values(100);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::int64_t>(i);
        rng.shuffle(values);
        auto m = median_trace(values, 50);
        m.label = "median_trace";
        out.push_back(std::move(m));
    }
    {
        const auto layout = build_layout(LayoutKind::veb, 8);
        ExecutionSequence all;
        all.label = "veb_searches";
        for (std::uint64_t leaf = layout.tree.first_leaf(); leaf <= layout.tree.nodes(); leaf += 17) {
            const auto t = search_trace(layout, leaf);
            all.accesses.insert(all.accesses.end(), t.accesses.begin(), t.accesses.end());
        }
        out.push_back(std::move(all));
    }
    for (auto& e : out) {
        if (e.label.empty()) e.label = "structured";
    }
    return out;
}

/// Worker count: LORCOST_THREADS when set and positive, else the hardware
/// concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("LORCOST_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Maps fn over [0, n) in parallel; the result order is the index order
/// regardless of scheduling.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(n);
    const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace lorcost
