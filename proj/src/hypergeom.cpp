#include "coarse/hypergeom.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace coarse {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Hypergeom::Hypergeom(std::uint64_t draws_, std::uint64_t population_, std::uint64_t marked_)
    : draws(draws_), population(population_), marked(marked_) {
    if (population == 0) throw std::invalid_argument("hypergeom: empty population");
    if (draws > population) throw std::invalid_argument("hypergeom: draws exceed population");
    if (marked > population) throw std::invalid_argument("hypergeom: marked exceed population");
}

Rational hypergeom_pmf(const Hypergeom& h, std::uint64_t x) {
    if (x > h.draws || x > h.marked) return Rational(0);
    if (h.draws - x > h.population - h.marked) return Rational(0);
    const BigInt ways = binomial(h.marked, x) * binomial(h.population - h.marked, h.draws - x);
    return Rational(ways, binomial(h.population, h.draws));
}

Rational hypergeom_tail_leq(const Hypergeom& h, const Rational& threshold) {
    if (threshold.sign() < 0) return Rational(0);
    const BigInt floor_thr = threshold.floor();
    std::uint64_t x_max = h.draws;
    if (floor_thr < big(x_max)) x_max = to_u64(floor_thr);

    // Support starts at max(0, draws - (population - marked)).
    std::uint64_t x_min = 0;
    if (h.draws > h.population - h.marked) x_min = h.draws - (h.population - h.marked);
    if (x_max < x_min) return Rational(0);

    // Term recurrence keeps everything integral until one final division:
    // T(x) = C(marked, x) * C(population - marked, draws - x),
    // T(x+1) = T(x) * (marked - x)(draws - x) / ((x+1)(population - marked - draws + x + 1)).
    BigInt term = binomial(h.marked, x_min) * binomial(h.population - h.marked, h.draws - x_min);
    BigInt total = term;
    for (std::uint64_t x = x_min; x < x_max; ++x) {
        term *= big(h.marked - x) * big(h.draws - x);
        term /= big(x + 1) * big(h.population - h.marked - h.draws + x + 1);
        total += term;
    }
    return Rational(total, binomial(h.population, h.draws));
}

namespace {
constexpr mpfr_prec_t kPrec = 128;
}

struct UpperReal::Impl {
    mpfr_t v;
    Impl() { mpfr_init2(v, kPrec); }
    ~Impl() { mpfr_clear(v); }
};

UpperReal::UpperReal() : impl_(new Impl) { mpfr_set_zero(impl_->v, 1); }
UpperReal::UpperReal(const UpperReal& o) : impl_(new Impl) {
    mpfr_set(impl_->v, o.impl_->v, MPFR_RNDU);
}
UpperReal& UpperReal::operator=(const UpperReal& o) {
    if (this != &o) mpfr_set(impl_->v, o.impl_->v, MPFR_RNDU);
    return *this;
}
UpperReal::~UpperReal() { delete impl_; }

UpperReal UpperReal::zero() { return UpperReal(); }

UpperReal UpperReal::one() {
    UpperReal r;
    mpfr_set_ui(r.impl_->v, 1, MPFR_RNDU);
    return r;
}

UpperReal UpperReal::exp_neg(const Rational& a) {
    if (a.sign() < 0) throw std::invalid_argument("exp_neg: argument must be nonnegative");
    UpperReal r;
    mpfr_set_q(r.impl_->v, a.raw().get_mpq_t(), MPFR_RNDD);  // lower bound on a
    mpfr_neg(r.impl_->v, r.impl_->v, MPFR_RNDU);             // upper bound on -a
    mpfr_exp(r.impl_->v, r.impl_->v, MPFR_RNDU);             // exp is monotone
    return r;
}

UpperReal UpperReal::from_rational(const Rational& q) {
    UpperReal r;
    mpfr_set_q(r.impl_->v, q.raw().get_mpq_t(), MPFR_RNDU);
    return r;
}

UpperReal& UpperReal::add(const UpperReal& other) {
    mpfr_add(impl_->v, impl_->v, other.impl_->v, MPFR_RNDU);
    return *this;
}

UpperReal& UpperReal::mul_u64(std::uint64_t k) {
    mpfr_mul_ui(impl_->v, impl_->v, static_cast<unsigned long>(k), MPFR_RNDU);
    return *this;
}

bool UpperReal::less_than(const Rational& q) const {
    return mpfr_cmp_q(impl_->v, q.raw().get_mpq_t()) < 0;
}

bool UpperReal::at_most(const Rational& q) const {
    return mpfr_cmp_q(impl_->v, q.raw().get_mpq_t()) <= 0;
}

double UpperReal::to_double() const { return mpfr_get_d(impl_->v, MPFR_RNDU); }

std::string UpperReal::str() const {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.20RUe", impl_->v);
    return buf;
}

UpperReal hoeffding_upper(const Rational& t, std::uint64_t n) {
    if (n == 0 || t.is_zero()) return UpperReal::one();
    const Rational a = Rational(2) * t * t * ratio(n, 1);
    return UpperReal::exp_neg(a);
}

struct LowerReal::Impl {
    mpfr_t v;
    Impl() { mpfr_init2(v, kPrec); }
    ~Impl() { mpfr_clear(v); }
};

LowerReal::LowerReal() : impl_(new Impl) { mpfr_set_zero(impl_->v, 1); }
LowerReal::LowerReal(const LowerReal& o) : impl_(new Impl) {
    mpfr_set(impl_->v, o.impl_->v, MPFR_RNDD);
}
LowerReal& LowerReal::operator=(const LowerReal& o) {
    if (this != &o) mpfr_set(impl_->v, o.impl_->v, MPFR_RNDD);
    return *this;
}
LowerReal::~LowerReal() { delete impl_; }

LowerReal LowerReal::exp_neg(const Rational& a) {
    if (a.sign() < 0) throw std::invalid_argument("exp_neg: argument must be nonnegative");
    LowerReal r;
    mpfr_set_q(r.impl_->v, a.raw().get_mpq_t(), MPFR_RNDU);  // upper bound on a
    mpfr_neg(r.impl_->v, r.impl_->v, MPFR_RNDD);             // lower bound on -a
    mpfr_exp(r.impl_->v, r.impl_->v, MPFR_RNDD);
    return r;
}

bool LowerReal::at_least(const Rational& q) const {
    return mpfr_cmp_q(impl_->v, q.raw().get_mpq_t()) >= 0;
}

std::string LowerReal::str() const {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.20RDe", impl_->v);
    return buf;
}

LowerReal hoeffding_lower(const Rational& t, std::uint64_t n) {
    if (n == 0 || t.is_zero()) return LowerReal::exp_neg(Rational(0));
    const Rational a = Rational(2) * t * t * ratio(n, 1);
    return LowerReal::exp_neg(a);
}

}  // namespace coarse
