#include "coarse/bits.hpp"

#include <stdexcept>

namespace coarse {

BitSeq BitSeq::from_string(std::string_view s) {
    std::vector<bool> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string: expected only 0/1");
        bits.push_back(c == '1');
    }
    return BitSeq(std::move(bits));
}

void BitSeq::append(const BitSeq& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitSeq::count_ones(std::uint64_t lo, std::uint64_t hi) const {
    if (lo > hi || hi > bits_.size()) throw std::out_of_range("count_ones: bad range");
    std::uint64_t c = 0;
    for (std::uint64_t i = lo; i < hi; ++i) c += bits_[i];
    return c;
}

std::string BitSeq::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<std::uint64_t> agreement_positions(const BitSeq& a, const BitSeq& r, std::uint64_t n) {
    if (n > a.size() || n > r.size()) throw std::out_of_range("agreement_positions: n beyond a sequence");
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < n; ++x)
        if (a[x] == r[x]) out.push_back(x);
    return out;
}

std::uint64_t agreement_count(const BitSeq& a, const BitSeq& r, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi || hi > a.size() || hi > r.size())
        throw std::out_of_range("agreement_count: bad range");
    std::uint64_t c = 0;
    for (std::uint64_t x = lo; x < hi; ++x) c += (a[x] == r[x]);
    return c;
}

}  // namespace coarse
