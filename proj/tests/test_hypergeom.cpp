#include <vector>

#include "coarse/hypergeom.hpp"
#include "doctest.h"

using namespace coarse;

namespace {

// Additive Pascal triangle, independent of the library's binomials.
std::vector<std::vector<BigInt>> pascal(std::uint64_t rows) {
    std::vector<std::vector<BigInt>> t(rows + 1);
    for (std::uint64_t n = 0; n <= rows; ++n) {
        t[n].assign(n + 1, 1);
        for (std::uint64_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

}  // namespace

TEST_CASE("binomials match an additive Pascal triangle") {
    const auto t = pascal(60);
    for (std::uint64_t n = 0; n <= 60; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == t[n][k]);
        CHECK(binomial(n, n + 1) == 0);
    }
    CHECK(binomial(50, 25).get_str() == "126410606437752");
}

TEST_CASE("pmf on a worked example") {
    const Hypergeom h{2, 4, 2};  // draw 2 of 4, 2 marked
    CHECK(hypergeom_pmf(h, 0) == Rational(1, 6));
    CHECK(hypergeom_pmf(h, 1) == Rational(2, 3));
    CHECK(hypergeom_pmf(h, 2) == Rational(1, 6));
    CHECK(hypergeom_pmf(h, 3) == Rational(0));
}

TEST_CASE("pmf sums to one and matches binomial ratios") {
    const auto t = pascal(40);
    for (std::uint64_t n = 1; n <= 40; ++n) {
        for (std::uint64_t k = 0; k <= n; k += 3) {
            for (std::uint64_t m = 0; m <= n; m += 2) {
                const Hypergeom h{k, n, m};
                Rational sum;
                for (std::uint64_t x = 0; x <= k; ++x) {
                    const Rational pmf = hypergeom_pmf(h, x);
                    sum += pmf;
                    if (x <= m && k - x <= n - m)
                        CHECK(pmf == Rational(t[m][x] * t[n - m][k - x], t[n][k]));
                    else
                        CHECK(pmf == Rational(0));
                }
                CHECK(sum == Rational(1));
            }
        }
    }
}

TEST_CASE("tail thresholds floor and clamp") {
    const Hypergeom h{2, 4, 2};
    CHECK(hypergeom_tail_leq(h, Rational(-1, 2)) == Rational(0));
    CHECK(hypergeom_tail_leq(h, Rational(0)) == Rational(1, 6));
    CHECK(hypergeom_tail_leq(h, Rational(1, 2)) == Rational(1, 6));
    CHECK(hypergeom_tail_leq(h, Rational(1)) == Rational(5, 6));
    CHECK(hypergeom_tail_leq(h, Rational(3, 2)) == Rational(5, 6));
    CHECK(hypergeom_tail_leq(h, Rational(2)) == Rational(1));
    CHECK(hypergeom_tail_leq(h, Rational(100)) == Rational(1));
}

TEST_CASE("tail equals a pmf prefix sum everywhere") {
    for (std::uint64_t n = 1; n <= 25; ++n) {
        for (std::uint64_t k = 0; k <= n; k += 2) {
            for (std::uint64_t m = 1; m <= n; m += 3) {
                const Hypergeom h{k, n, m};
                Rational run;
                for (std::uint64_t x = 0; x <= k; ++x) {
                    run += hypergeom_pmf(h, x);
                    CHECK(hypergeom_tail_leq(h, ratio(x, 1)) == run);
                }
            }
        }
    }
}

TEST_CASE("tail recurrence survives a population with huge subset counts") {
    // C(600, 300) has ~180 digits; the tail must still be exact.
    const Hypergeom h{300, 600, 40};
    Rational total;
    for (std::uint64_t x = 0; x <= 40; ++x) total += hypergeom_pmf(h, x);
    CHECK(total == Rational(1));
    CHECK(hypergeom_tail_leq(h, Rational(40)) == Rational(1));
    const Rational below_mean = hypergeom_tail_leq(h, Rational(10));
    CHECK(below_mean > Rational(0));
    CHECK(below_mean < Rational(1, 100));
}

TEST_CASE("directed rounding pins e^{-1} from both sides") {
    // e^{-1} = 0.3678794411714423...
    const UpperReal up = UpperReal::exp_neg(Rational(1));
    CHECK(up.at_most(Rational(36788, 100000)));
    CHECK(!up.at_most(Rational(36787, 100000)));
    CHECK(up.less_than(Rational(36788, 100000)));

    const LowerReal down = LowerReal::exp_neg(Rational(1));
    CHECK(down.at_least(Rational(36787, 100000)));
    CHECK(!down.at_least(Rational(36788, 100000)));

    CHECK(UpperReal::exp_neg(Rational(0)).at_most(Rational(1)));
    CHECK(!UpperReal::exp_neg(Rational(0)).less_than(Rational(1)));
    CHECK(LowerReal::exp_neg(Rational(0)).at_least(Rational(1)));
}

TEST_CASE("rounded-up rationals stay above the exact value") {
    const UpperReal third = UpperReal::from_rational(Rational(1, 3));
    CHECK(!third.less_than(Rational(1, 3)));
    CHECK(!third.at_most(Rational(1, 3)));  // 1/3 is not a binary float
    CHECK(third.at_most(Rational(33334, 100000)));
    const UpperReal half = UpperReal::from_rational(Rational(1, 2));
    CHECK(half.at_most(Rational(1, 2)));  // exactly representable
}

TEST_CASE("analytic tail bound behaves at the edges") {
    CHECK(hoeffding_upper(Rational(0), 100).at_most(Rational(1)));
    CHECK(hoeffding_upper(Rational(1, 4), 0).at_most(Rational(1)));
    // exp(-2 * (1/4)^2 * 8) = exp(-1)
    const UpperReal b = hoeffding_upper(Rational(1, 4), 8);
    CHECK(b.at_most(Rational(36788, 100000)));
    CHECK(!b.at_most(Rational(36787, 100000)));
    const LowerReal lo = hoeffding_lower(Rational(1, 4), 8);
    CHECK(lo.at_least(Rational(36787, 100000)));
    // structure: add and scale
    const UpperReal two_halves = UpperReal::from_rational(Rational(1, 2))
                                     .add(UpperReal::from_rational(Rational(1, 2)));
    CHECK(two_halves.at_most(Rational(1)));
    CHECK(UpperReal::from_rational(Rational(1, 4)).mul_u64(4).at_most(Rational(1)));
}
