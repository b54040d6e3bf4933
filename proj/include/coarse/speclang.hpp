#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coarse/rational.hpp"

namespace coarse {

// Expression AST over one natural variable. Every construct is total on the
// naturals by construction: division and modulus take a literal positive
// constant on the right, so parsing succeeds only for total functions.
struct Expr {
    enum class Op { Var, Const, Add, Mul, Div, Mod, Min, Max, Compose };

    Op op;
    BigInt k;  // Const value; literal divisor/modulus for Div/Mod
    std::shared_ptr<const Expr> a, b;
};

using ExprPtr = std::shared_ptr<const Expr>;

BigInt eval_expr(const Expr& e, const BigInt& x);

// Abstract value range over a set of inputs [lo, hi] (hi empty = unbounded).
struct ValueRange {
    BigInt lo;
    std::optional<BigInt> hi;
};

ValueRange range_expr(const Expr& e, const ValueRange& input);

// A total function on the naturals given as an optional finite table prefix
// followed by an expression: inputs below the table length are looked up,
// the rest go through the expression.
//
// Concrete syntax (whitespace-insensitive):
//   spec  := [ "[" nat ("," nat)* "]" "then" ] expr
//   expr  := term ("+" term)*
//   term  := atom ("*" atom | "/" posnat | "%" posnat)*
//   atom  := "x" | nat | "min(" expr "," expr ")" | "max(" expr "," expr ")"
//          | "compose(" expr ";" expr ")" | "(" expr ")"
// compose(f; g) applies g first: compose(x % 2; x + 1) is (x + 1) % 2.
class FuncSpec {
public:
    FuncSpec() = default;
    FuncSpec(std::vector<BigInt> table, ExprPtr tail, std::string source);

    BigInt operator()(const BigInt& x) const;
    BigInt operator()(std::uint64_t x) const { return (*this)(big(x)); }

    const std::vector<BigInt>& table() const { return table_; }
    const Expr& tail() const { return *tail_; }
    const std::string& source() const { return source_; }

    // Syntactic check: empty table and bare "x".
    bool is_identity() const;

    // Range of outputs over all inputs >= 0 (table entries included).
    ValueRange output_range() const;

private:
    std::vector<BigInt> table_;
    ExprPtr tail_;
    std::string source_;
};

// Throws ParseError (with byte position) on malformed text.
FuncSpec parse_reduction(std::string_view text);

// A set of naturals given by a 0/1-valued FuncSpec. parse_set additionally
// verifies, by range analysis, that the function can only produce 0 or 1,
// and rejects specs it cannot prove 0/1-valued (e.g. "x+1"; write
// "min(x+1,1)" instead).
class SetSpec {
public:
    SetSpec() = default;
    explicit SetSpec(FuncSpec f);

    bool contains(const BigInt& x) const { return f_(x) == 1; }
    bool contains(std::uint64_t x) const { return contains(big(x)); }
    const std::string& source() const { return f_.source(); }
    const FuncSpec& func() const { return f_; }

private:
    FuncSpec f_;
};

SetSpec parse_set(std::string_view text);

}  // namespace coarse
