#include "coarse/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (sgn(den) == 0) throw std::invalid_argument("rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
    q_ /= o.q_;
    return *this;
}

BigInt Rational::floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

BigInt Rational::ceil() const {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::parse(const std::string& text) {
    std::size_t a = 0, b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    const std::string body = text.substr(a, b - a);
    if (body.empty()) throw ParseError("rational: empty string", a);

    const auto slash = body.find('/');
    auto integer = [&](const std::string& s, std::size_t at) {
        if (s.empty()) throw ParseError("rational: missing integer", at);
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ParseError("rational: missing digits", at);
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("rational: invalid character", at + i);
        return BigInt(s);
    };

    if (slash == std::string::npos) return Rational(integer(body, a));
    const BigInt num = integer(body.substr(0, slash), a);
    const BigInt den = integer(body.substr(slash + 1), a + slash + 1);
    if (sgn(den) == 0) throw ParseError("rational: zero denominator", a + slash + 1);
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::uint64_t to_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        throw ResourceLimit("value out of 64-bit range: " + v.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof out, 0, 0, v.get_mpz_t());
    return out;
}

}  // namespace coarse
