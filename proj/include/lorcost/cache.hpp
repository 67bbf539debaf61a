#pragma once

#include <cstdint>
#include <limits>
#include <list>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"
#include "trace.hpp"

namespace lorcost {

/// Exact expectation over block-alignment shifts: (sum over shifts) / B.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

using BlockId = std::uint64_t;

namespace detail {

inline void check_block(std::uint64_t block) {
    if (block < 1) throw InvalidParam("B", "block size must be >= 1");
}

inline void check_shift(std::uint64_t shift, std::uint64_t block) {
    check_block(block);
    if (shift >= block) throw InvalidShift(shift, block);
}

inline void require_query_type(const ExecutionSequence& e) {
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] < e[i - 1]) throw NotQueryType(i + 1);
    }
}

}  // namespace detail

/// Block holding addr once every address is shifted right by `shift` words.
inline BlockId block_of(Address addr, std::uint64_t block, std::uint64_t shift = 0) {
    detail::check_shift(shift, block);
    return (addr + shift) / block;
}

/// Block transfers of a non-decreasing trace: the number of transitions that
/// change block. Memory size is irrelevant for such traces.
inline std::uint64_t co_cost_query(const ExecutionSequence& e, std::uint64_t block, std::uint64_t shift = 0) {
    detail::check_shift(shift, block);
    detail::require_query_type(e);
    std::uint64_t cost = 0;
    for (std::size_t i = 1; i < e.size(); ++i) {
        if ((e[i] + shift) / block != (e[i - 1] + shift) / block) ++cost;
    }
    return cost;
}

/// Mean of co_cost_query over all B shifts, by enumeration.
inline Rational smoothed_co_query(const ExecutionSequence& e, std::uint64_t block) {
    detail::check_block(block);
    detail::require_query_type(e);
    std::int64_t total = 0;
    for (std::uint64_t s = 0; s < block; ++s) total += static_cast<std::int64_t>(co_cost_query(e, block, s));
    return Rational(total, static_cast<std::int64_t>(block));
}

enum class Policy { lru, belady };

inline const char* to_string(Policy p) { return p == Policy::lru ? "lru" : "belady"; }

/// Fully associative cache of M/B blocks of B words.
struct CacheConfig {
    std::uint64_t M = 0;
    std::uint64_t B = 1;
    Policy policy = Policy::lru;

    std::uint64_t capacity_blocks() const { return M / B; }

    void validate() const {
        if (B < 1) throw InvalidParam("B", "block size must be >= 1");
        if (M < B) throw InvalidParam("M", "memory must hold at least one block (M >= B)");
        if (M % B != 0) throw InvalidParam("M", "memory must be a whole number of blocks");
    }
};

struct SimResult {
    std::uint64_t total_misses = 0;
    std::vector<std::uint8_t> per_access;  // 1 = miss
    struct Eviction {
        std::size_t access = 0;  // 1-based index of the access that caused it
        BlockId block = 0;
    };
    std::vector<Eviction> evictions;
};

namespace detail {

inline SimResult simulate_lru(const std::vector<BlockId>& blocks, std::uint64_t capacity) {
    SimResult r;
    r.per_access.assign(blocks.size(), 0);
    std::list<BlockId> recency;  // front = most recently used
    std::unordered_map<BlockId, std::list<BlockId>::iterator> where;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const BlockId b = blocks[i];
        if (auto it = where.find(b); it != where.end()) {
            recency.splice(recency.begin(), recency, it->second);
            continue;
        }
        r.per_access[i] = 1;
        ++r.total_misses;
        if (recency.size() == capacity) {
            const BlockId victim = recency.back();
            recency.pop_back();
            where.erase(victim);
            r.evictions.push_back({i + 1, victim});
        }
        recency.push_front(b);
        where[b] = recency.begin();
    }
    return r;
}

// Offline optimal replacement: evict the resident block whose next use is
// farthest away. Blocks never used again go first; ties go to the lowest id.
inline SimResult simulate_belady(const std::vector<BlockId>& blocks, std::uint64_t capacity) {
    constexpr std::size_t never = std::numeric_limits<std::size_t>::max();
    const std::size_t n = blocks.size();
    std::vector<std::size_t> next_use(n, never);
    {
        std::unordered_map<BlockId, std::size_t> upcoming;
        for (std::size_t i = n; i-- > 0;) {
            auto it = upcoming.find(blocks[i]);
            next_use[i] = it == upcoming.end() ? never : it->second;
            upcoming[blocks[i]] = i;
        }
    }
    // Ordered so that the victim is the last element: largest next use, and
    // among equal next uses the smallest block id.
    struct Order {
        bool operator()(const std::pair<std::size_t, BlockId>& a, const std::pair<std::size_t, BlockId>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        }
    };
    std::set<std::pair<std::size_t, BlockId>, Order> resident;
    std::unordered_map<BlockId, std::size_t> resident_next;

    SimResult r;
    r.per_access.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const BlockId b = blocks[i];
        if (auto it = resident_next.find(b); it != resident_next.end()) {
            resident.erase({it->second, b});
            it->second = next_use[i];
            resident.insert({next_use[i], b});
            continue;
        }
        r.per_access[i] = 1;
        ++r.total_misses;
        if (resident.size() == capacity) {
            auto victim = std::prev(resident.end());
            r.evictions.push_back({i + 1, victim->second});
            resident_next.erase(victim->second);
            resident.erase(victim);
        }
        resident.insert({next_use[i], b});
        resident_next[b] = next_use[i];
    }
    return r;
}

}  // namespace detail

/// Simulates the trace on a cold (empty) cache with block boundaries moved by
/// `shift`.
inline SimResult simulate(const ExecutionSequence& e, const CacheConfig& cfg, std::uint64_t shift = 0) {
    cfg.validate();
    detail::check_shift(shift, cfg.B);
    std::vector<BlockId> blocks;
    blocks.reserve(e.size());
    for (Address a : e.accesses) blocks.push_back((a + shift) / cfg.B);
    return cfg.policy == Policy::lru ? detail::simulate_lru(blocks, cfg.capacity_blocks())
                                     : detail::simulate_belady(blocks, cfg.capacity_blocks());
}

/// Mean miss count over all B alignment shifts.
inline Rational smoothed_cost(const ExecutionSequence& e, const CacheConfig& cfg) {
    cfg.validate();
    std::int64_t total = 0;
    for (std::uint64_t s = 0; s < cfg.B; ++s) total += static_cast<std::int64_t>(simulate(e, cfg, s).total_misses);
    return Rational(total, static_cast<std::int64_t>(cfg.B));
}

/// Per-access miss probability under a uniform shift.
inline std::vector<double> smoothed_per_access(const ExecutionSequence& e, const CacheConfig& cfg) {
    cfg.validate();
    std::vector<double> acc(e.size(), 0.0);
    for (std::uint64_t s = 0; s < cfg.B; ++s) {
        const auto r = simulate(e, cfg, s);
        for (std::size_t i = 0; i < e.size(); ++i) acc[i] += r.per_access[i];
    }
    for (auto& x : acc) x /= static_cast<double>(cfg.B);
    return acc;
}

}  // namespace lorcost
