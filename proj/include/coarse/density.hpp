#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coarse/rational.hpp"

namespace coarse {

// |s ∩ [0, n)| / n. Throws std::invalid_argument when n == 0.
Rational prefix_density(const std::vector<std::uint64_t>& s, std::uint64_t n);

// Exact densities of a position set sampled at a fixed checkpoint ladder.
struct DensityProfile {
    std::vector<std::uint64_t> checkpoints;  // strictly increasing, all >= 1
    std::vector<Rational> values;            // same length, each in [0,1]

    void to_csv(std::ostream& os) const;  // header "n,density" then exact rows
};

// Throws std::invalid_argument on an empty/non-increasing/zero checkpoint list.
DensityProfile make_profile(const std::vector<std::uint64_t>& s,
                            std::vector<std::uint64_t> checkpoints);

// min(profile.values[i] : i >= from_index); from_index must be in range.
Rational tail_min_density(const DensityProfile& profile, std::size_t from_index);

// Density floor at a single position deep inside a triangular tiling.
//
// Inputs are per-interval agreement densities a_n (index 0 holds interval 1)
// and a nonnegative, non-increasing slack sequence gamma_n on the same
// indexing. The hypothesis a_n >= p - gamma_n is enforced for every interval
// from `start` (1-based) through the end of the data; a violation throws
// HypothesisViolation carrying the offending interval index.
//
// With N = index of the last interval lying fully below x, the returned
// bound is ((N-1)/(N+1)) * (p - gamma_{m*}), where m* is the largest m whose
// density level p - gamma_m is reached by the running cumulative density at
// some K_m <= N and never left again within the data. `holds` compares the
// bound against a sound lower estimate of the true density at x built from
// the full intervals plus the guaranteed portion of the straddling interval.
struct DensityChainResult {
    Rational bound;
    bool holds = false;
    std::uint64_t big_n = 0;     // N above
    std::uint64_t m_star = 0;    // 1-based index into gammas
    std::uint64_t k_mstar = 0;   // realized K_{m*}
    Rational lower_estimate;     // the sound density floor used for `holds`
};

DensityChainResult density_chain_check(const std::vector<Rational>& per_interval_agreement,
                                       const std::vector<Rational>& gammas, const Rational& p,
                                       std::uint64_t x, std::uint64_t start = 1);

}  // namespace coarse
