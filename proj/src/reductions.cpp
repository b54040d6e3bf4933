#include "coarse/reductions.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/errors.hpp"
#include "coarse/intervals.hpp"

namespace coarse {

std::uint64_t multiset_size(const Multiset& m) {
    std::uint64_t total = 0;
    for (const auto& [value, mult] : m) total += mult;
    return total;
}

Multiset multiset_image(const FuncSpec& f, std::uint64_t n) {
    const PosRange range = interval_bounds(IntervalKind::Triangular, n);
    Multiset image;
    for (std::uint64_t x = range.lo; x < range.hi; ++x) ++image[f(x)];
    return image;
}

std::pair<std::vector<BigInt>, Multiset> star_split_multiset(const Multiset& j) {
    std::vector<BigInt> solo;
    Multiset twin;
    for (const auto& [value, mult] : j) {
        if (mult % 2 == 1) solo.push_back(value);
        if (mult / 2 > 0) twin[value] = mult / 2;
    }
    return {std::move(solo), std::move(twin)};
}

StarSplit partition_interval(const FuncSpec& f, std::uint64_t n) {
    const PosRange range = interval_bounds(IntervalKind::Triangular, n);
    std::map<BigInt, std::vector<std::uint64_t>> groups;
    for (std::uint64_t x = range.lo; x < range.hi; ++x) groups[f(x)].push_back(x);

    StarSplit split;
    split.max_image = -1;
    for (const auto& [value, positions] : groups) {
        if (value > split.max_image) split.max_image = value;
        std::size_t i = 0;
        for (; i + 1 < positions.size(); i += 2) {
            split.twin1.push_back(positions[i]);
            split.twin2.push_back(positions[i + 1]);
        }
        if (i < positions.size()) {
            split.solo.push_back(positions[i]);
            split.j_solo.push_back(value);
        }
        if (positions.size() / 2 > 0) split.j_twin[value] = positions.size() / 2;
    }
    std::sort(split.solo.begin(), split.solo.end());
    std::sort(split.twin1.begin(), split.twin1.end());
    std::sort(split.twin2.begin(), split.twin2.end());
    return split;
}

bool bstar_membership(const FuncSpec& f, std::uint64_t x) {
    const std::uint64_t n = triangular_index(x);
    const StarSplit split = partition_interval(f, n);
    return std::binary_search(split.twin1.begin(), split.twin1.end(), x);
}

bool be_membership(const FuncSpec& f, const BitSeq& a, std::uint64_t x) {
    const BigInt image = f(x);
    if (image >= big(a.size())) {
        if (mpz_sizeinbase(image.get_mpz_t(), 2) > 64)
            throw ResourceLimit("be_membership: image does not fit 64-bit indexing");
        throw InsufficientPrefix("be_membership: image beyond committed prefix",
                                 to_u64(image) + 1);
    }
    return a[to_u64(image)];
}

const StarSplit& PartitionTable::get(std::size_t e, std::uint64_t n) const {
    if (e >= reductions_.size()) throw std::out_of_range("PartitionTable: bad reduction index");
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[{e, n}];
    if (!slot) slot = std::make_unique<StarSplit>(partition_interval(reductions_[e], n));
    return *slot;
}

}  // namespace coarse
