#pragma once

#include <cstdint>
#include <vector>

#include "coarse/bits.hpp"
#include "coarse/intervals.hpp"
#include "coarse/rational.hpp"

namespace coarse {

// Repetition coding over factorial blocks: bit i of the source rides block
// i+1, which spans [(i+1)!, (i+2)!). Position 0 sits below every block and
// is written as 0.

// Produces a sequence of length (|source|+1)!.
BitSeq halfbound_encode(const std::vector<bool>& source);

// Strict majority over block n; an exact tie decodes to 0.
bool halfbound_decode_bit(const BitSeq& a, std::uint64_t n);

// Decodes blocks n_lo..n_hi inclusive.
std::vector<bool> halfbound_decode_range(const BitSeq& a, std::uint64_t n_lo, std::uint64_t n_hi);

// Largest number of in-block flips that can never change the decoded bit.
std::uint64_t halfbound_flip_budget(std::uint64_t n);

// Fraction of [0, x) where a matches the clean encoding of source.
Rational halfbound_agreement(const BitSeq& a, const std::vector<bool>& source, std::uint64_t x);

}  // namespace coarse
