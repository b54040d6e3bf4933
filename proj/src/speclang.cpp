#include "coarse/speclang.hpp"

#include <cctype>
#include <utility>

#include "coarse/errors.hpp"

namespace coarse {

BigInt eval_expr(const Expr& e, const BigInt& x) {
    switch (e.op) {
        case Expr::Op::Var: return x;
        case Expr::Op::Const: return e.k;
        case Expr::Op::Add: return eval_expr(*e.a, x) + eval_expr(*e.b, x);
        case Expr::Op::Mul: return eval_expr(*e.a, x) * eval_expr(*e.b, x);
        case Expr::Op::Div: {
            BigInt q;
            const BigInt lhs = eval_expr(*e.a, x);
            mpz_fdiv_q(q.get_mpz_t(), lhs.get_mpz_t(), e.k.get_mpz_t());
            return q;
        }
        case Expr::Op::Mod: {
            BigInt r;
            const BigInt lhs = eval_expr(*e.a, x);
            mpz_fdiv_r(r.get_mpz_t(), lhs.get_mpz_t(), e.k.get_mpz_t());
            return r;
        }
        case Expr::Op::Min: {
            const BigInt lhs = eval_expr(*e.a, x), rhs = eval_expr(*e.b, x);
            return lhs < rhs ? lhs : rhs;
        }
        case Expr::Op::Max: {
            const BigInt lhs = eval_expr(*e.a, x), rhs = eval_expr(*e.b, x);
            return lhs > rhs ? lhs : rhs;
        }
        case Expr::Op::Compose: return eval_expr(*e.a, eval_expr(*e.b, x));
    }
    throw std::logic_error("eval_expr: bad op");
}

ValueRange range_expr(const Expr& e, const ValueRange& input) {
    auto bounded = [](BigInt lo, BigInt hi) {
        return ValueRange{std::move(lo), std::move(hi)};
    };
    switch (e.op) {
        case Expr::Op::Var: return input;
        case Expr::Op::Const: return bounded(e.k, e.k);
        case Expr::Op::Add: {
            const ValueRange ra = range_expr(*e.a, input), rb = range_expr(*e.b, input);
            ValueRange r{ra.lo + rb.lo, std::nullopt};
            if (ra.hi && rb.hi) r.hi = *ra.hi + *rb.hi;
            return r;
        }
        case Expr::Op::Mul: {
            const ValueRange ra = range_expr(*e.a, input), rb = range_expr(*e.b, input);
            ValueRange r{ra.lo * rb.lo, std::nullopt};
            if ((ra.hi && *ra.hi == 0) || (rb.hi && *rb.hi == 0))
                r.hi = BigInt(0);
            else if (ra.hi && rb.hi)
                r.hi = *ra.hi * *rb.hi;
            return r;
        }
        case Expr::Op::Div: {
            const ValueRange ra = range_expr(*e.a, input);
            ValueRange r{ra.lo / e.k, std::nullopt};
            if (ra.hi) r.hi = *ra.hi / e.k;
            return r;
        }
        case Expr::Op::Mod: {
            const ValueRange ra = range_expr(*e.a, input);
            if (ra.hi && *ra.hi < e.k) return ra;  // modulus is a no-op on this range
            return bounded(BigInt(0), e.k - 1);
        }
        case Expr::Op::Min: {
            const ValueRange ra = range_expr(*e.a, input), rb = range_expr(*e.b, input);
            ValueRange r{ra.lo < rb.lo ? ra.lo : rb.lo, std::nullopt};
            if (ra.hi && rb.hi)
                r.hi = *ra.hi < *rb.hi ? *ra.hi : *rb.hi;
            else if (ra.hi)
                r.hi = *ra.hi;
            else if (rb.hi)
                r.hi = *rb.hi;
            return r;
        }
        case Expr::Op::Max: {
            const ValueRange ra = range_expr(*e.a, input), rb = range_expr(*e.b, input);
            ValueRange r{ra.lo > rb.lo ? ra.lo : rb.lo, std::nullopt};
            if (ra.hi && rb.hi) r.hi = *ra.hi > *rb.hi ? *ra.hi : *rb.hi;
            return r;
        }
        case Expr::Op::Compose: return range_expr(*e.a, range_expr(*e.b, input));
    }
    throw std::logic_error("range_expr: bad op");
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    FuncSpec parse_spec() {
        std::vector<BigInt> table;
        skip_ws();
        if (peek() == '[') {
            table = parse_table();
            expect_word("then");
        }
        ExprPtr tail = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return FuncSpec(std::move(table), std::move(tail), std::string(text_));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) { throw ParseError("spec: " + what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect_word(const std::string& w) {
        skip_ws();
        const std::size_t at = pos_;
        if (word() != w) {
            pos_ = at;
            fail("expected '" + w + "'");
        }
    }

    BigInt nat() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a natural number");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    BigInt positive_nat() {
        skip_ws();
        const std::size_t at = pos_;
        BigInt v = nat();
        if (v == 0) {
            pos_ = at;
            fail("divisor/modulus must be positive");
        }
        return v;
    }

    std::vector<BigInt> parse_table() {
        expect('[');
        std::vector<BigInt> entries;
        entries.push_back(nat());
        while (consume(',')) entries.push_back(nat());
        expect(']');
        return entries;
    }

    static ExprPtr node(Expr::Op op, BigInt k = BigInt(0), ExprPtr a = nullptr, ExprPtr b = nullptr) {
        return std::make_shared<Expr>(Expr{op, std::move(k), std::move(a), std::move(b)});
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (consume('+')) lhs = node(Expr::Op::Add, BigInt(0), lhs, parse_term());
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_atom();
        for (;;) {
            if (consume('*'))
                lhs = node(Expr::Op::Mul, BigInt(0), lhs, parse_atom());
            else if (consume('/'))
                lhs = node(Expr::Op::Div, positive_nat(), lhs);
            else if (consume('%'))
                lhs = node(Expr::Op::Mod, positive_nat(), lhs);
            else
                return lhs;
        }
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return node(Expr::Op::Const, nat());
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            const std::string w = word();
            if (w == "x") return node(Expr::Op::Var);
            if (w == "min" || w == "max") {
                expect('(');
                ExprPtr a = parse_expr();
                expect(',');
                ExprPtr b = parse_expr();
                expect(')');
                return node(w == "min" ? Expr::Op::Min : Expr::Op::Max, BigInt(0), a, b);
            }
            if (w == "compose") {
                expect('(');
                ExprPtr f = parse_expr();
                expect(';');
                ExprPtr g = parse_expr();
                expect(')');
                return node(Expr::Op::Compose, BigInt(0), f, g);
            }
            pos_ = at;
            fail("unknown name '" + w + "'");
        }
        fail("unexpected character");
    }
};

}  // namespace

FuncSpec::FuncSpec(std::vector<BigInt> table, ExprPtr tail, std::string source)
    : table_(std::move(table)), tail_(std::move(tail)), source_(std::move(source)) {}

BigInt FuncSpec::operator()(const BigInt& x) const {
    if (sgn(x) < 0) throw std::invalid_argument("FuncSpec: negative input");
    if (x < big(table_.size())) return table_[x.get_ui()];
    return eval_expr(*tail_, x);
}

bool FuncSpec::is_identity() const {
    return table_.empty() && tail_ && tail_->op == Expr::Op::Var;
}

ValueRange FuncSpec::output_range() const {
    ValueRange r = range_expr(*tail_, ValueRange{big(table_.size()), std::nullopt});
    for (const BigInt& v : table_) {
        if (v < r.lo) r.lo = v;
        if (r.hi && v > *r.hi) r.hi = v;
    }
    return r;
}

FuncSpec parse_reduction(std::string_view text) { return Parser(text).parse_spec(); }

SetSpec::SetSpec(FuncSpec f) : f_(std::move(f)) {
    const ValueRange r = f_.output_range();
    if (!r.hi || *r.hi > 1)
        throw ParseError("set spec: cannot prove the expression is 0/1-valued; "
                         "wrap it as min(..., 1) if it is");
}

SetSpec parse_set(std::string_view text) { return SetSpec(parse_reduction(text)); }

}  // namespace coarse
