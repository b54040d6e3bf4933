#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coarse {

// A finite 0/1 sequence indexed from 0. This is the committed prefix of a
// characteristic function, so positions are u64 and growth is append-only
// in practice (set() exists for tests and corruption experiments).
class BitSeq {
public:
    BitSeq() = default;
    explicit BitSeq(std::vector<bool> bits) : bits_(std::move(bits)) {}

    static BitSeq zeros(std::uint64_t len) { return BitSeq(std::vector<bool>(len, false)); }
    static BitSeq ones(std::uint64_t len) { return BitSeq(std::vector<bool>(len, true)); }
    // '0'/'1' characters only; throws std::invalid_argument otherwise.
    static BitSeq from_string(std::string_view s);

    std::uint64_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool operator[](std::uint64_t i) const { return bits_.at(i); }
    void set(std::uint64_t i, bool v) { bits_.at(i) = v; }
    void push_back(bool v) { bits_.push_back(v); }
    void append(const BitSeq& other);

    std::uint64_t count_ones(std::uint64_t lo, std::uint64_t hi) const;
    std::string str() const;

    friend bool operator==(const BitSeq& a, const BitSeq& b) { return a.bits_ == b.bits_; }

private:
    std::vector<bool> bits_;
};

// Positions x < n where a and r agree. Throws std::out_of_range if n exceeds
// either length.
std::vector<std::uint64_t> agreement_positions(const BitSeq& a, const BitSeq& r, std::uint64_t n);

// |{x : lo <= x < hi, a[x] == r[x]}|, same bounds requirement.
std::uint64_t agreement_count(const BitSeq& a, const BitSeq& r, std::uint64_t lo, std::uint64_t hi);

}  // namespace coarse
