#include <string>

#include "coarse/errors.hpp"
#include "coarse/speclang.hpp"
#include "doctest.h"

using namespace coarse;

namespace {

BigInt ev(const std::string& text, std::uint64_t x) { return parse_reduction(text)(big(x)); }

}  // namespace

TEST_CASE("expression evaluation") {
    CHECK(ev("x", 17) == 17);
    CHECK(ev("42", 17) == 42);
    CHECK(ev("x + 5", 3) == 8);
    CHECK(ev("x * 3", 4) == 12);
    CHECK(ev("x / 2", 7) == 3);
    CHECK(ev("x / 2", 6) == 3);
    CHECK(ev("x % 3", 7) == 1);
    CHECK(ev("min(x, 5)", 9) == 5);
    CHECK(ev("min(x, 5)", 2) == 2);
    CHECK(ev("max(x, 3)", 1) == 3);
    CHECK(ev("max(x, 3)", 10) == 10);
    CHECK(ev("x + 2 * 3", 1) == 7);         // product binds tighter
    CHECK(ev("x * 2 + 1", 5) == 11);
    CHECK(ev("(x + 1) % 2", 3) == 0);
    CHECK(ev("(x + 1) % 2", 4) == 1);
    CHECK(ev("x / 2 / 3", 25) == 4);        // left to right
    CHECK(ev("x % 5 % 3", 9) == 1);
    CHECK(ev("x*x", 9) == 81);
}

TEST_CASE("composition applies the right-hand side first") {
    CHECK(ev("compose(x % 2; x + 1)", 3) == 0);   // (3+1) % 2
    CHECK(ev("compose(x + 1; x % 2)", 3) == 2);   // (3%2) + 1
    CHECK(ev("compose(x / 2; x * 2)", 21) == 21);
    CHECK(ev("compose(compose(x + 1; x * 2); x + 3)", 1) == 9);  // ((1+3)*2)+1
}

TEST_CASE("table prefixes") {
    const FuncSpec f = parse_reduction("[1,0] then x % 3");
    CHECK(f(big(0)) == 1);
    CHECK(f(big(1)) == 0);
    CHECK(f(big(2)) == 2);
    CHECK(f(big(3)) == 0);
    CHECK(f(big(4)) == 1);
    CHECK(f(big(5)) == 2);
    CHECK(f.table().size() == 2);
    const FuncSpec g = parse_reduction("[7] then x");
    CHECK(g(big(0)) == 7);
    CHECK(g(big(1)) == 1);
}

TEST_CASE("identity is recognized syntactically only") {
    CHECK(parse_reduction("x").is_identity());
    CHECK(parse_reduction("  x  ").is_identity());
    CHECK(!parse_reduction("x + 0").is_identity());
    CHECK(!parse_reduction("x * 1").is_identity());
    CHECK(!parse_reduction("[0] then x").is_identity());
    CHECK(parse_reduction("(x)").is_identity());  // grouping adds no node
}

TEST_CASE("parse errors carry byte positions") {
    auto pos_of = [](const std::string& text) {
        try {
            parse_reduction(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    CHECK(pos_of("x / 0") == 4);
    CHECK(pos_of("x % 0") == 4);
    CHECK(pos_of("") != std::string::npos);
    CHECK(pos_of("x +") != std::string::npos);
    CHECK(pos_of("y") != std::string::npos);
    CHECK(pos_of("x x") != std::string::npos);
    CHECK(pos_of("min(x)") != std::string::npos);
    CHECK(pos_of("min(x, )") != std::string::npos);
    CHECK(pos_of("compose(x, x)") != std::string::npos);  // needs a semicolon
    CHECK(pos_of("(x") != std::string::npos);
    CHECK(pos_of("[1,0] then") != std::string::npos);
    CHECK(pos_of("[] then x") != std::string::npos);
    CHECK(pos_of("[1 0] then x") != std::string::npos);
    CHECK(pos_of("x / x") != std::string::npos);  // divisor must be a literal
    CHECK(pos_of("x % x") != std::string::npos);
    CHECK(pos_of("3 - 1") != std::string::npos);  // no subtraction on naturals
}

TEST_CASE("output ranges") {
    auto range = [](const std::string& text) { return parse_reduction(text).output_range(); };
    CHECK(range("x % 3").lo == 0);
    CHECK(range("x % 3").hi.value() == 2);
    CHECK(range("0").hi.value() == 0);
    CHECK(!range("x").hi.has_value());
    CHECK(!range("x + 1").hi.has_value());
    CHECK(range("x + 1").lo == 1);
    CHECK(range("min(x + 4, 9)").lo == 4);
    CHECK(range("min(x + 4, 9)").hi.value() == 9);
    CHECK(range("x % 2 * 3").hi.value() == 3);
    CHECK(range("[5] then x % 2").hi.value() == 5);  // table values count
    CHECK(range("x % 4 / 2").hi.value() == 1);
    CHECK(range("0 * x").hi.value() == 0);           // absorbed product
}

TEST_CASE("set specs must be provably 0/1-valued") {
    CHECK(parse_set("0").contains(5u) == false);
    CHECK(parse_set("1").contains(5u) == true);
    CHECK(parse_set("x % 2").contains(3u) == true);
    CHECK(parse_set("x % 2").contains(4u) == false);
    CHECK(parse_set("(x + 1) % 2").contains(4u) == true);
    CHECK(parse_set("min(x, 1)").contains(0u) == false);
    CHECK(parse_set("min(x, 1)").contains(2u) == true);
    CHECK_THROWS_AS(parse_set("x"), ParseError);
    CHECK_THROWS_AS(parse_set("x + 1"), ParseError);
    CHECK_THROWS_AS(parse_set("x % 3"), ParseError);
    CHECK_THROWS_AS(parse_set("2"), ParseError);
    CHECK_THROWS_AS(parse_set("x % 2 * 3"), ParseError);
    try {
        parse_set("x + 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("min(") != std::string::npos);
    }
}

TEST_CASE("sources are preserved verbatim") {
    CHECK(parse_reduction("x / 2").source() == "x / 2");
    CHECK(parse_set("(x + 1) % 2").source() == "(x + 1) % 2");
}
