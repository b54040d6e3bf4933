#pragma once

#include <cstdint>
#include <string>

#include "coarse/rational.hpp"

namespace coarse {

// C(n, k) exactly; 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// Draw `draws` positions from a `population`-element universe containing
// `marked` marked positions, without replacement; X = number of marked
// positions drawn.
struct Hypergeom {
    std::uint64_t draws;
    std::uint64_t population;
    std::uint64_t marked;

    Hypergeom(std::uint64_t draws, std::uint64_t population, std::uint64_t marked);
};

// P(X = x), exact. Zero outside the support.
Rational hypergeom_pmf(const Hypergeom& h, std::uint64_t x);

// P(X <= threshold), exact; a non-integral threshold is floored, a negative
// one yields 0.
Rational hypergeom_tail_leq(const Hypergeom& h, const Rational& threshold);

// A certified upper bound on exp(-2 t^2 n), computed at 128-bit precision
// with every operation rounded toward +infinity. Comparisons against exact
// rationals are exact (no further rounding).
class UpperReal {
public:
    UpperReal();
    UpperReal(const UpperReal&);
    UpperReal& operator=(const UpperReal&);
    ~UpperReal();

    static UpperReal zero();
    static UpperReal one();
    // Upper bound on exp(-a) for a >= 0 (rational, exact input).
    static UpperReal exp_neg(const Rational& a);
    static UpperReal from_rational(const Rational& q);  // rounds up

    UpperReal& add(const UpperReal& other);      // rounds up
    UpperReal& mul_u64(std::uint64_t k);         // rounds up
    bool less_than(const Rational& q) const;     // exact comparison
    bool at_most(const Rational& q) const;
    double to_double() const;                    // rounds up
    std::string str() const;                     // round-up decimal, 20 digits

private:
    struct Impl;
    Impl* impl_;
};

// Upper bound on exp(-2 t^2 n); n == 0 or t == 0 gives exactly 1.
UpperReal hoeffding_upper(const Rational& t, std::uint64_t n);

// Mirror image of UpperReal: a certified lower bound on exp(-2 t^2 n),
// rounded toward -infinity, used to certify that an exact tail really lies
// below the analytic bound (comparing against an upper bound would not
// prove the inequality).
class LowerReal {
public:
    LowerReal();
    LowerReal(const LowerReal&);
    LowerReal& operator=(const LowerReal&);
    ~LowerReal();

    static LowerReal exp_neg(const Rational& a);  // lower bound on exp(-a), a >= 0

    bool at_least(const Rational& q) const;  // exact comparison
    std::string str() const;                 // round-down decimal, 20 digits

private:
    struct Impl;
    Impl* impl_;
};

LowerReal hoeffding_lower(const Rational& t, std::uint64_t n);

}  // namespace coarse
