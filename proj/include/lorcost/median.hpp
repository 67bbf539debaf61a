#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "trace.hpp"

namespace lorcost {

struct SelectionRun {
    ExecutionSequence trace;
    std::int64_t value = 0;
};

namespace detail {

// Median-of-medians selection on a tape. The input occupies [0, n); chunk
// medians are written to a scratch region past the live data, which grows
// with each nested median-of-medians call. Every element read or write is one
// trace entry; comparisons are free.
class Selector {
public:
    explicit Selector(std::vector<std::int64_t> values) : tape_(std::move(values)) {}

    std::int64_t select(std::size_t lo, std::size_t len, std::size_t rank, std::size_t scratch) {
        if (len <= 5) {
            std::vector<std::int64_t> chunk;
            for (std::size_t k = 0; k < len; ++k) chunk.push_back(read(lo + k));
            std::sort(chunk.begin(), chunk.end());
            return chunk[rank];
        }
        const std::size_t groups = (len + 4) / 5;
        for (std::size_t g = 0; g < groups; ++g) {
            std::vector<std::int64_t> chunk;
            for (std::size_t k = g * 5; k < std::min(len, g * 5 + 5); ++k) chunk.push_back(read(lo + k));
            std::sort(chunk.begin(), chunk.end());
            write(scratch + g, chunk[(chunk.size() - 1) / 2]);
        }
        const auto pivot = select(scratch, groups, (groups - 1) / 2, scratch + groups);

        std::size_t less = 0, equal = 0;
        for (std::size_t k = 0; k < len; ++k) {
            const auto x = read(lo + k);
            less += x < pivot;
            equal += x == pivot;
        }
        bool keep_less;
        if (rank < less) {
            keep_less = true;
        } else if (rank < less + equal) {
            return pivot;
        } else {
            keep_less = false;
            rank -= less + equal;
        }
        std::size_t kept = 0;
        for (std::size_t k = 0; k < len; ++k) {
            const auto x = read(lo + k);
            if (keep_less ? x < pivot : x > pivot) write(lo + kept++, x);
        }
        return select(lo, kept, rank, scratch);
    }

    ExecutionSequence take_trace() { return std::move(trace_); }

private:
    std::int64_t read(std::size_t addr) {
        trace_.accesses.push_back(addr);
        return tape_[addr];
    }

    void write(std::size_t addr, std::int64_t x) {
        if (tape_.size() <= addr) tape_.resize(addr + 1, 0);
        tape_[addr] = x;
        trace_.accesses.push_back(addr);
    }

    std::vector<std::int64_t> tape_;
    ExecutionSequence trace_;
};

}  // namespace detail

/// Runs selection of the element of the given rank (0-based, in sorted
/// order) and returns the address trace together with the selected value.
inline SelectionRun median_select(const std::vector<std::int64_t>& values, std::size_t rank) {
    if (values.empty() || rank >= values.size()) throw InvalidRank(rank, values.size());
    detail::Selector sel(values);
    SelectionRun run;
    run.value = sel.select(0, values.size(), rank, values.size());
    run.trace = sel.take_trace();
    run.trace.label = "median_trace";
    return run;
}

inline ExecutionSequence median_trace(const std::vector<std::int64_t>& values, std::size_t rank) {
    return median_select(values, rank).trace;
}

}  // namespace lorcost
