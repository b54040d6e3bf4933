#include <stdexcept>

#include "coarse/errors.hpp"
#include "coarse/intervals.hpp"
#include "doctest.h"

using namespace coarse;

TEST_CASE("triangle and factorial values") {
    CHECK(triangle(1) == 1);
    CHECK(triangle(2) == 3);
    CHECK(triangle(4) == 10);
    CHECK(triangle(100) == 5050);
    CHECK(factorial(1) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == 2432902008176640000u);
    CHECK_THROWS_AS(factorial(21), ResourceLimit);
    CHECK_THROWS_AS(triangle(6074001000u), ResourceLimit);
}

TEST_CASE("interval bounds") {
    CHECK(interval_bounds(IntervalKind::Triangular, 1) == PosRange{0, 1});
    CHECK(interval_bounds(IntervalKind::Triangular, 3) == PosRange{3, 6});
    CHECK(interval_bounds(IntervalKind::Triangular, 3).length() == 3);
    CHECK(interval_bounds(IntervalKind::Factorial, 1) == PosRange{1, 2});
    CHECK(interval_bounds(IntervalKind::Factorial, 2) == PosRange{2, 6});
    CHECK(interval_bounds(IntervalKind::Factorial, 4) == PosRange{24, 120});
    CHECK_THROWS_AS(interval_bounds(IntervalKind::Triangular, 0), std::invalid_argument);
    CHECK_THROWS_AS(interval_bounds(IntervalKind::Factorial, 0), std::invalid_argument);
}

TEST_CASE("index inverts bounds on both families") {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        const PosRange r = interval_bounds(IntervalKind::Triangular, n);
        CHECK(interval_index(IntervalKind::Triangular, r.lo) == n);
        CHECK(interval_index(IntervalKind::Triangular, r.hi - 1) == n);
        CHECK(triangular_index(r.lo) == n);
    }
    for (std::uint64_t n = 1; n <= 12; ++n) {
        const PosRange r = interval_bounds(IntervalKind::Factorial, n);
        CHECK(interval_index(IntervalKind::Factorial, r.lo) == n);
        CHECK(interval_index(IntervalKind::Factorial, r.hi - 1) == n);
    }
    CHECK(interval_index(IntervalKind::Triangular, 0) == 1);
    CHECK_THROWS_AS(interval_index(IntervalKind::Factorial, 0), std::invalid_argument);
}

TEST_CASE("index handles huge triangular positions") {
    const std::uint64_t n = 6074000999u;
    const PosRange r = interval_bounds(IntervalKind::Triangular, n);
    CHECK(interval_index(IntervalKind::Triangular, r.lo) == n);
    CHECK(interval_index(IntervalKind::Triangular, r.lo + r.length() / 2) == n);
}

TEST_CASE("intervals meeting a window") {
    CHECK(intervals_meeting(IntervalKind::Triangular, {1, 3}, 100) ==
          std::vector<std::uint64_t>{2});
    CHECK(intervals_meeting(IntervalKind::Triangular, {0, 7}, 100) ==
          std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(intervals_meeting(IntervalKind::Triangular, {0, 7}, 3) ==
          std::vector<std::uint64_t>{1, 2, 3});
    CHECK(intervals_meeting(IntervalKind::Triangular, {5, 5}, 100).empty());
    CHECK(intervals_meeting(IntervalKind::Factorial, {0, 3}, 100) ==
          std::vector<std::uint64_t>{1, 2});
    CHECK(intervals_meeting(IntervalKind::Factorial, {100, 130}, 100) ==
          std::vector<std::uint64_t>{4, 5});
}
