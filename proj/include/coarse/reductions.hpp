#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "coarse/bits.hpp"
#include "coarse/rational.hpp"
#include "coarse/speclang.hpp"

namespace coarse {

// Value -> multiplicity. Keys are exact, so distinct huge images never collide.
using Multiset = std::map<BigInt, std::uint64_t>;

std::uint64_t multiset_size(const Multiset& m);

// Image multiset f(I_n) over triangular interval n (with multiplicity).
Multiset multiset_image(const FuncSpec& f, std::uint64_t n);

// Split J into (J n, 2 J nn): each value keeps one copy in the first part when
// its multiplicity is odd, and floor(mult/2) copies in the second.
std::pair<std::vector<BigInt>, Multiset> star_split_multiset(const Multiset& j);

// Canonical partition of triangular interval n under f. Positions with the
// same image are listed in ascending order and paired consecutively: each
// pair contributes its first position to twin1 and its second to twin2, and
// a leftover (odd multiplicity) goes to solo. j_solo is the sorted set of
// images reached by leftovers; j_twin the multiset of images reached by pairs.
struct StarSplit {
    std::vector<std::uint64_t> solo;   // sorted positions
    std::vector<std::uint64_t> twin1;  // sorted positions, first of each pair
    std::vector<std::uint64_t> twin2;  // sorted positions, second of each pair
    std::vector<BigInt> j_solo;        // sorted values
    Multiset j_twin;
    BigInt max_image;                  // max f over the interval; -1 if empty
};

StarSplit partition_interval(const FuncSpec& f, std::uint64_t n);

// x lies in twin1 of its own triangular interval.
bool bstar_membership(const FuncSpec& f, std::uint64_t x);

// a[f(x)]; throws InsufficientPrefix when f(x) is past the committed prefix
// (carrying the least sufficient length) and ResourceLimit when f(x) cannot
// even be indexed in 64 bits.
bool be_membership(const FuncSpec& f, const BitSeq& a, std::uint64_t x);

// Shared per-(reduction, interval) partition cache. partition_interval walks
// the whole interval, and window scans revisit the same (e, n) pairs many
// times while tuning stage parameters, so this memoization is load-bearing.
class PartitionTable {
public:
    explicit PartitionTable(std::vector<FuncSpec> reductions)
        : reductions_(std::move(reductions)) {}

    const std::vector<FuncSpec>& reductions() const { return reductions_; }
    const StarSplit& get(std::size_t e, std::uint64_t n) const;

private:
    std::vector<FuncSpec> reductions_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::size_t, std::uint64_t>, std::unique_ptr<StarSplit>> cache_;
};

}  // namespace coarse
