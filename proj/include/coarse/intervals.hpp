#pragma once

#include <cstdint>
#include <vector>

namespace coarse {

// Half-open position range [lo, hi).
struct PosRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    std::uint64_t length() const { return hi - lo; }
    bool contains(std::uint64_t x) const { return lo <= x && x < hi; }
    bool empty() const { return lo >= hi; }
    friend bool operator==(const PosRange&, const PosRange&) = default;
};

enum class IntervalKind { Triangular, Factorial };

// n(n+1)/2 with an overflow guard (throws ResourceLimit past n ~ 6.07e9).
std::uint64_t triangle(std::uint64_t n);
// n! for n <= 20; ResourceLimit beyond.
std::uint64_t factorial(std::uint64_t n);

// Interval n >= 1 of the chosen tiling:
//   Triangular: [n(n-1)/2, n(n+1)/2), length n, tiles all of [0, inf).
//   Factorial:  [n!, (n+1)!), length n*n!, tiles [1, inf); position 0 is
//               outside every factorial interval.
// Throws std::invalid_argument for n == 0.
PosRange interval_bounds(IntervalKind kind, std::uint64_t n);

// The unique n with x in interval n. Factorial kind throws
// std::invalid_argument for x == 0.
std::uint64_t interval_index(IntervalKind kind, std::uint64_t x);

inline std::uint64_t triangular_index(std::uint64_t x) {
    return interval_index(IntervalKind::Triangular, x);
}

// Indices n in [1, n_max] whose interval meets the window; empty window or
// window entirely outside the tiling yields {}.
std::vector<std::uint64_t> intervals_meeting(IntervalKind kind, PosRange window,
                                             std::uint64_t n_max);

}  // namespace coarse
