#include "coarse/intervals.hpp"

#include <cmath>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {
constexpr std::uint64_t kTriangleMaxN = 6074000999ULL;  // last n with n(n+1)/2 < 2^63
constexpr std::uint64_t kFactorialMaxN = 20;            // 21! overflows u64
}  // namespace

std::uint64_t triangle(std::uint64_t n) {
    if (n > kTriangleMaxN) throw ResourceLimit("triangle: index too large for 64-bit positions");
    return (n % 2 == 0) ? (n / 2) * (n + 1) : n * ((n + 1) / 2);
}

std::uint64_t factorial(std::uint64_t n) {
    if (n > kFactorialMaxN) throw ResourceLimit("factorial: overflows 64 bits");
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

PosRange interval_bounds(IntervalKind kind, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("interval_bounds: intervals are indexed from 1");
    if (kind == IntervalKind::Triangular) return {triangle(n - 1), triangle(n)};
    return {factorial(n), factorial(n + 1)};
}

std::uint64_t interval_index(IntervalKind kind, std::uint64_t x) {
    if (kind == IntervalKind::Factorial) {
        if (x == 0) throw std::invalid_argument("interval_index: 0 precedes every factorial interval");
        std::uint64_t n = 1;
        while (n < kFactorialMaxN && factorial(n + 1) <= x) ++n;
        return n;
    }
    std::uint64_t n = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(x) + 1.0L) + 1.0L) / 2.0L);
    if (n == 0) n = 1;
    while (n > 1 && triangle(n - 1) > x) --n;
    while (triangle(n) <= x) ++n;
    return n;
}

std::vector<std::uint64_t> intervals_meeting(IntervalKind kind, PosRange window,
                                             std::uint64_t n_max) {
    std::vector<std::uint64_t> out;
    if (window.empty() || n_max == 0) return out;
    std::uint64_t lo = window.lo;
    if (kind == IntervalKind::Factorial && lo == 0) lo = 1;
    if (lo >= window.hi) return out;
    const std::uint64_t first = interval_index(kind, lo);
    const std::uint64_t last = interval_index(kind, window.hi - 1);
    for (std::uint64_t n = first; n <= last && n <= n_max; ++n) out.push_back(n);
    return out;
}

}  // namespace coarse
