#include "coarse/halfbound.hpp"

#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

PosRange block_bounds(std::uint64_t n) {
    return interval_bounds(IntervalKind::Factorial, n);
}

}  // namespace

BitSeq halfbound_encode(const std::vector<bool>& source) {
    if (source.empty()) throw std::invalid_argument("halfbound_encode: empty source");
    const std::uint64_t n_max = source.size();
    const std::uint64_t len = factorial(n_max + 1);
    if (len > (std::uint64_t{1} << 32))
        throw ResourceLimit("halfbound_encode: output longer than 2^32 bits");
    BitSeq a = BitSeq::zeros(len);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (!source[n - 1]) continue;
        const PosRange r = block_bounds(n);
        for (std::uint64_t x = r.lo; x < r.hi; ++x) a.set(x, true);
    }
    return a;
}

bool halfbound_decode_bit(const BitSeq& a, std::uint64_t n) {
    const PosRange r = block_bounds(n);
    if (r.hi > a.size())
        throw InsufficientPrefix("halfbound_decode_bit: block not fully committed", r.hi);
    const std::uint64_t ones = a.count_ones(r.lo, r.hi);
    return 2 * ones > r.length();
}

std::vector<bool> halfbound_decode_range(const BitSeq& a, std::uint64_t n_lo, std::uint64_t n_hi) {
    if (n_lo == 0 || n_hi < n_lo)
        throw std::invalid_argument("halfbound_decode_range: bad block range");
    std::vector<bool> out;
    out.reserve(n_hi - n_lo + 1);
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) out.push_back(halfbound_decode_bit(a, n));
    return out;
}

std::uint64_t halfbound_flip_budget(std::uint64_t n) {
    return (block_bounds(n).length() - 1) / 2;
}

Rational halfbound_agreement(const BitSeq& a, const std::vector<bool>& source, std::uint64_t x) {
    if (x == 0 || x > a.size())
        throw std::invalid_argument("halfbound_agreement: x outside committed data");
    std::uint64_t agree = 0;
    for (std::uint64_t pos = 0; pos < x; ++pos) {
        bool clean = false;
        if (pos >= 1) {
            const std::uint64_t n = interval_index(IntervalKind::Factorial, pos);
            clean = n <= source.size() && source[n - 1];
        }
        agree += (a[pos] == clean);
    }
    return ratio(agree, x);
}

}  // namespace coarse
