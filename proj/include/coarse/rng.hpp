#pragma once

#include <cstdint>
#include <vector>

namespace coarse {

// splitmix64 step: advances state and returns the next output word.
std::uint64_t splitmix64(std::uint64_t& state);

// Stage seed derivation: feed `master` then `stream` through splitmix64 so
// nearby (master, stream) pairs land in unrelated states.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

// xoshiro256** 1.0. Hand-rolled (with splitmix64 state expansion) because the
// standard library's distributions are not byte-portable across
// implementations and runs must reproduce bit-for-bit from a recorded seed.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);
    std::uint64_t next();

private:
    std::uint64_t s_[4];
};

// Unbiased draw from [0, n) by rejection on the top multiple of n; n >= 1.
std::uint64_t uniform_below(Xoshiro256ss& gen, std::uint64_t n);

// r distinct values from [0, universe), uniformly among all r-subsets,
// returned sorted ascending. Partial Fisher–Yates over a sparse swap map, so
// universe may be large as long as r is moderate. Throws
// std::invalid_argument when r > universe.
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t universe, std::uint64_t r,
                                                      Xoshiro256ss& gen);

}  // namespace coarse
