#include "coarse/density.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "coarse/errors.hpp"
#include "coarse/intervals.hpp"

namespace coarse {

Rational prefix_density(const std::vector<std::uint64_t>& s, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("prefix_density: n must be positive");
    std::uint64_t count = 0;
    for (std::uint64_t x : s) count += (x < n);
    return ratio(count, n);
}

DensityProfile make_profile(const std::vector<std::uint64_t>& s,
                            std::vector<std::uint64_t> checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("make_profile: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] == 0) throw std::invalid_argument("make_profile: zero checkpoint");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("make_profile: checkpoints must be strictly increasing");
    }
    std::vector<std::uint64_t> sorted = s;
    std::sort(sorted.begin(), sorted.end());

    DensityProfile profile;
    profile.checkpoints = std::move(checkpoints);
    profile.values.reserve(profile.checkpoints.size());
    std::size_t idx = 0;
    for (std::uint64_t n : profile.checkpoints) {
        while (idx < sorted.size() && sorted[idx] < n) ++idx;
        profile.values.push_back(ratio(idx, n));
    }
    return profile;
}

void DensityProfile::to_csv(std::ostream& os) const {
    os << "n,density\n";
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        os << checkpoints[i] << "," << values[i].str() << "\n";
}

Rational tail_min_density(const DensityProfile& profile, std::size_t from_index) {
    if (from_index >= profile.values.size())
        throw std::out_of_range("tail_min_density: index beyond profile");
    Rational best = profile.values[from_index];
    for (std::size_t i = from_index + 1; i < profile.values.size(); ++i)
        best = std::min(best, profile.values[i]);
    return best;
}

DensityChainResult density_chain_check(const std::vector<Rational>& per_interval_agreement,
                                       const std::vector<Rational>& gammas, const Rational& p,
                                       std::uint64_t x, std::uint64_t start) {
    const std::size_t h = per_interval_agreement.size();
    if (h == 0) throw std::invalid_argument("density_chain_check: empty agreement sequence");
    if (gammas.size() < h)
        throw std::invalid_argument("density_chain_check: gamma sequence shorter than agreement data");
    if (start < 1 || start > h) throw std::invalid_argument("density_chain_check: start out of range");
    if (x < 1) throw std::invalid_argument("density_chain_check: x must lie past the first interval");

    for (std::size_t i = 0; i < h; ++i) {
        const Rational& a = per_interval_agreement[i];
        if (a < Rational(0) || a > Rational(1))
            throw std::invalid_argument("density_chain_check: agreement density outside [0,1]");
        if (gammas[i].sign() < 0)
            throw std::invalid_argument("density_chain_check: negative gamma");
        if (i > 0 && gammas[i] > gammas[i - 1])
            throw std::invalid_argument("density_chain_check: gammas must be non-increasing");
    }

    // Hypothesis a_n >= p - gamma_n for every covered interval from `start`.
    for (std::size_t n = start; n <= h; ++n) {
        if (per_interval_agreement[n - 1] < p - gammas[n - 1])
            throw HypothesisViolation("density_chain_check: interval " + std::to_string(n) +
                                          " falls below its density floor",
                                      n);
    }

    const std::uint64_t big_n = triangular_index(x) - 1;
    if (big_n < 1)
        throw std::invalid_argument("density_chain_check: x must lie past the first interval");
    if (big_n + 1 > h)
        throw std::invalid_argument("density_chain_check: agreement data must cover the interval of x");

    // cum[k] = density of the agreement positions within the first k intervals.
    std::vector<Rational> cum(h + 1);
    Rational weighted;  // sum of a_n * n
    for (std::size_t k = 1; k <= h; ++k) {
        weighted += per_interval_agreement[k - 1] * Rational(static_cast<long>(k));
        cum[k] = weighted / ratio(triangle(k), 1);
    }
    std::vector<Rational> sufmin(h + 2);
    sufmin[h] = cum[h];
    for (std::size_t k = h; k-- > start;) sufmin[k] = std::min(cum[k], sufmin[k + 1]);

    // Largest m whose level p - gamma_m is held from some K_m <= N onward.
    std::uint64_t m_star = 0, k_mstar = 0;
    for (std::size_t m = h; m >= 1; --m) {
        const Rational level = p - gammas[m - 1];
        std::uint64_t k_m = 0;
        for (std::size_t k = start; k <= h; ++k) {
            if (sufmin[k] >= level) {
                k_m = k;
                break;
            }
        }
        if (k_m != 0 && k_m <= big_n) {
            m_star = m;
            k_mstar = k_m;
            break;
        }
    }
    if (m_star == 0)
        throw HypothesisViolation(
            "density_chain_check: no density level is reached within the full intervals below x; "
            "extend the profile or lower start",
            start);

    DensityChainResult result;
    result.big_n = big_n;
    result.m_star = m_star;
    result.k_mstar = k_mstar;
    result.bound =
        ratio(big_n - 1, big_n + 1) * (p - gammas[m_star - 1]);

    // Sound floor for the density at x: everything promised by the full
    // intervals, plus whatever portion of the straddling interval is forced
    // to agree even if all of its slack is packed after x.
    Rational agreed;
    for (std::size_t n = 1; n <= big_n; ++n)
        agreed += per_interval_agreement[n - 1] * Rational(static_cast<long>(n));
    const std::uint64_t straddle = big_n + 1;
    const Rational c_straddle =
        per_interval_agreement[straddle - 1] * Rational(static_cast<long>(straddle));
    const Rational overhang = ratio(triangle(straddle), 1) - ratio(x + 1, 1);
    const Rational forced = std::max(Rational(0), c_straddle - overhang);
    result.lower_estimate = (agreed + forced) / ratio(x + 1, 1);
    result.holds = result.lower_estimate >= result.bound;
    return result;
}

}  // namespace coarse
