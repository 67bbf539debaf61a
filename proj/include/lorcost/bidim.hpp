#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "locality.hpp"
#include "trace.hpp"

namespace lorcost {

/// Cost max(f(d), g(delta)) of reaching a target from a source d words away
/// that was touched delta time units ago. f is a spatial locality table
/// bounded by 1; g is a 0-1 threshold on elapsed time.
struct BidimLocality {
    LocalityFunction f;
    double threshold = 0.0;
    /// strict: g(delta) = 0 iff delta < threshold. Otherwise iff delta <= threshold.
    bool strict = false;

    std::size_t N() const noexcept { return f.N; }

    double temporal(double delta) const noexcept {
        return (strict ? delta < threshold : delta <= threshold) ? 0.0 : 1.0;
    }

    /// Spatial cost with distances past the table saturating at 1.
    double spatial(std::uint64_t d) const noexcept { return d > f.N ? 1.0 : f.values[d]; }

    /// Smallest distance at which f reaches 1. Sources at least this far away
    /// always cost 1.
    std::uint64_t saturation() const noexcept {
        for (std::size_t d = 0; d <= f.N; ++d) {
            if (f.values[d] >= 1.0) return d;
        }
        return f.N + 1;
    }
};

inline double eval(const BidimLocality& bl, std::uint64_t d, double delta) {
    if (d > bl.N()) throw DistanceOutOfDomain(0, d, bl.N());
    return std::max(bl.f.values[d], bl.temporal(delta));
}

/// Validates f (locality class, bounded by 1) and the tall-cache relation
/// f(k) >= g(k) on the table's domain.
inline BidimLocality make_bidim(LocalityFunction f, double threshold, bool strict = false) {
    if (!(threshold > 0.0)) throw InvalidParam("threshold", "must be positive");
    if (const auto rep = validate(f); !rep.valid) {
        throw InvalidParam("f", rep.violations.front().detail);
    }
    for (std::size_t d = 0; d <= f.N; ++d) {
        if (f.values[d] > 1.0) throw InvalidParam("f", "values must lie in [0, 1]");
    }
    BidimLocality bl{std::move(f), threshold, strict};
    for (std::size_t k = 0; k <= bl.N(); ++k) {
        if (bl.f.values[k] < bl.temporal(static_cast<double>(k))) {
            throw InvalidParam("threshold", "temporal term exceeds spatial term at k=" + std::to_string(k));
        }
    }
    return bl;
}

enum class TallCache { enforce, unchecked };

/// Bidimensional function of a cache with memory M and block B:
/// f(d) = min(1, d/B) and g(delta) = min(1, floor(delta / (M/B))), so a
/// source is resident iff delta < M/B. `unchecked` skips the M >= B^2
/// requirement (and with it the f >= g relation) for experiments on short
/// caches.
inline BidimLocality make_lmb(std::uint64_t memory, std::uint64_t block, TallCache tall = TallCache::enforce) {
    if (block < 1) throw InvalidParam("B", "must be >= 1");
    if (memory < block) throw InvalidParam("M", "must be >= B");
    if (memory % block != 0) throw InvalidParam("M", "must be a multiple of B");
    if (tall == TallCache::enforce && memory / block < block) throw TallCacheViolation(memory, block);
    BidimLocality bl;
    bl.f = make_block_locality(block, static_cast<std::size_t>(block));
    bl.threshold = static_cast<double>(memory / block);
    bl.strict = true;
    return bl;
}

/// Source of the cheapest jump on one side of an access.
struct Finger {
    std::size_t source = 0;  // 1-based access index
    std::uint64_t distance = 0;
    double cost = 1.0;
};

struct TimedTrace {
    ExecutionSequence trace;
    std::vector<double> times;  // times[i] = t(E, i+1)
    std::vector<double> costs;
    // Populated only when the cheapest source on that side costs less than 1.
    std::vector<std::optional<Finger>> left;
    std::vector<std::optional<Finger>> right;
    double total = 0.0;
};

/// t(E, i) for 1-based i.
inline double time_of(const TimedTrace& t, std::size_t i) {
    if (i < 1 || i > t.times.size()) throw IndexOutOfRange(i, t.times.size());
    return t.times[i - 1];
}

namespace detail {

// Latest access index per address. Older accesses to the same address have
// the same spatial cost and at least the temporal cost, so only the latest
// can be a strict minimum.
class SourceIndex {
public:
    void record(Address a, std::size_t i) { last_[a] = i; }

    // Cheapest source with address in [lo, hi]; ties go to the latest access.
    template <class CostFn>
    std::optional<Finger> best(Address lo, Address hi, Address target, CostFn cost) const {
        std::optional<Finger> out;
        for (auto it = last_.lower_bound(lo); it != last_.end() && it->first <= hi; ++it) {
            const double c = cost(it->first, it->second);
            if (c >= 1.0) continue;
            if (!out || c < out->cost || (c == out->cost && it->second + 1 > out->source)) {
                out = Finger{it->second + 1, distance(it->first, target), c};
            }
        }
        return out;
    }

private:
    std::map<Address, std::size_t> last_;
};

enum class Fingers { two, one };

inline TimedTrace timed_cost(const ExecutionSequence& e, const BidimLocality& bl, Fingers mode) {
    TimedTrace out;
    out.trace = e;
    const std::size_t n = e.size();
    out.times.resize(n);
    out.costs.resize(n);
    out.left.resize(n);
    out.right.resize(n);

    const std::uint64_t reach = bl.saturation();  // sources at distance >= reach cost 1
    SourceIndex index;
    double now = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.times[i] = now;
        const Address x = e[i];
        auto cost_of = [&](Address a, std::size_t k) {
            return std::max(bl.spatial(distance(a, x)), bl.temporal(now - out.times[k]));
        };
        std::optional<Finger> left, right;
        if (reach > 0) {
            const Address lo = x >= reach - 1 ? x - (reach - 1) : 0;
            const Address hi = x <= std::numeric_limits<Address>::max() - (reach - 1)
                                   ? x + (reach - 1)
                                   : std::numeric_limits<Address>::max();
            left = index.best(lo, x, x, cost_of);
            right = index.best(x, hi, x, cost_of);
        }
        double c;
        if (mode == Fingers::two) {
            const double l = left ? left->cost : 1.0;
            const double r = right ? right->cost : 1.0;
            c = std::max(l + r - 1.0, 0.0);
            out.left[i] = left;
            out.right[i] = right;
        } else {
            // One source: the cheaper side, ties to the latest access.
            const bool use_left = left && (!right || left->cost < right->cost ||
                                           (left->cost == right->cost && left->source > right->source));
            if (use_left) out.left[i] = left;
            else if (right) out.right[i] = right;
            c = use_left ? left->cost : (right ? right->cost : 1.0);
        }
        out.costs[i] = c;
        now += c;
        index.record(x, i);
    }
    out.total = now;
    return out;
}

}  // namespace detail

/// Per access: L = cheapest source at or below the address, R = cheapest at
/// or above (1 when absent), cost = max(L + R - 1, 0). Time is the running
/// sum of costs. With make_lmb(M, B) this models smoothed LRU.
inline TimedTrace two_finger_cost(const ExecutionSequence& e, const BidimLocality& bl) {
    return detail::timed_cost(e, bl, detail::Fingers::two);
}

/// Variant that charges only the single cheapest prior source.
inline TimedTrace single_finger_cost(const ExecutionSequence& e, const BidimLocality& bl) {
    return detail::timed_cost(e, bl, detail::Fingers::one);
}

}  // namespace lorcost
