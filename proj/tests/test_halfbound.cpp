#include <stdexcept>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/halfbound.hpp"
#include "coarse/harness.hpp"
#include "doctest.h"

using namespace coarse;

namespace {

// flips the first `count` positions of block n
BitSeq flip_block_prefix(BitSeq a, std::uint64_t n, std::uint64_t count) {
    const PosRange r = interval_bounds(IntervalKind::Factorial, n);
    for (std::uint64_t i = 0; i < count; ++i) a.set(r.lo + i, !a[r.lo + i]);
    return a;
}

}  // namespace

TEST_CASE("encoding writes constant factorial blocks") {
    CHECK(halfbound_encode({true}).str() == "01");
    CHECK(halfbound_encode({false}).str() == "00");

    const BitSeq a = halfbound_encode({true, false, true});
    REQUIRE(a.size() == 24);
    CHECK(a[0] == false);
    CHECK(a[1] == true);                // block 1 = [1, 2)
    CHECK(a.count_ones(2, 6) == 0);     // block 2 = [2, 6)
    CHECK(a.count_ones(6, 24) == 18);   // block 3 = [6, 24)
    CHECK(a.count_ones(0, 24) == 19);

    CHECK_THROWS_AS(halfbound_encode({}), std::invalid_argument);
    CHECK_THROWS_AS(halfbound_encode(std::vector<bool>(12, false)), ResourceLimit);
}

TEST_CASE("decoding takes strict majorities") {
    const std::vector<bool> source = {true, false, true, true, false};
    const BitSeq a = halfbound_encode(source);
    CHECK(halfbound_decode_range(a, 1, 5) == source);
    for (std::uint64_t n = 1; n <= 5; ++n) CHECK(halfbound_decode_bit(a, n) == source[n - 1]);

    SUBCASE("an exact tie reads as zero") {
        BitSeq half = BitSeq::zeros(6);
        half.set(2, true);
        half.set(3, true);
        CHECK(halfbound_decode_bit(half, 2) == false);
        half.set(4, true);
        CHECK(halfbound_decode_bit(half, 2) == true);
    }
    SUBCASE("blocks past the committed prefix are refused") {
        const BitSeq short_a = BitSeq::zeros(10);
        try {
            halfbound_decode_bit(short_a, 3);
            FAIL("expected InsufficientPrefix");
        } catch (const InsufficientPrefix& e) {
            CHECK(e.required() == 24);
        }
        CHECK_THROWS_AS(halfbound_decode_range(a, 1, 6), InsufficientPrefix);
    }
    SUBCASE("block ranges are validated") {
        CHECK_THROWS_AS(halfbound_decode_range(a, 0, 2), std::invalid_argument);
        CHECK_THROWS_AS(halfbound_decode_range(a, 3, 2), std::invalid_argument);
    }
}

TEST_CASE("flip budgets never reach a majority") {
    CHECK(halfbound_flip_budget(1) == 0);
    CHECK(halfbound_flip_budget(2) == 1);   // block length 4
    CHECK(halfbound_flip_budget(3) == 8);   // block length 18
    CHECK(halfbound_flip_budget(4) == 47);  // block length 96

    // worst case is flipping budget-many bits away from the truth
    for (const bool truth : {false, true}) {
        const std::vector<bool> source = {truth, truth, truth};
        const BitSeq clean = halfbound_encode(source);
        for (std::uint64_t n = 1; n <= 3; ++n) {
            const BitSeq worst = flip_block_prefix(clean, n, halfbound_flip_budget(n));
            CHECK(halfbound_decode_bit(worst, n) == truth);
        }
    }

    // block 2 exhaustively: every <= budget flip pattern keeps the bit
    for (const bool truth : {false, true}) {
        const BitSeq clean = halfbound_encode({true, truth});
        for (std::uint64_t pos = 2; pos < 6; ++pos) {
            BitSeq one_flip = clean;
            one_flip.set(pos, !one_flip[pos]);
            CHECK(halfbound_decode_bit(one_flip, 2) == truth);
        }
    }
}

TEST_CASE("the tie rule makes corruption one-sided") {
    // block 2 has length 4: two flips kill a 1 but not a 0
    const BitSeq ones = halfbound_encode({true, true});
    CHECK(halfbound_decode_bit(flip_block_prefix(ones, 2, 2), 2) == false);

    const BitSeq zeros = halfbound_encode({true, false});
    CHECK(halfbound_decode_bit(flip_block_prefix(zeros, 2, 2), 2) == false);
    CHECK(halfbound_decode_bit(flip_block_prefix(zeros, 2, 3), 2) == true);
}

TEST_CASE("agreement after a targeted kill") {
    const std::vector<bool> source = {true, true};
    const BitSeq clean = halfbound_encode(source);
    CHECK(halfbound_agreement(clean, source, 6) == Rational(1));
    CHECK(halfbound_agreement(clean, source, 1) == Rational(1));

    // killing block n costs at least half its length, so agreement over the
    // whole prefix [0, (n+1)!) cannot exceed 1/2 + 1/(2(n+1))
    const BitSeq killed = flip_block_prefix(clean, 2, 2);
    CHECK(halfbound_decode_bit(killed, 2) == false);
    CHECK(halfbound_agreement(killed, source, 6) == Rational(2, 3));
    CHECK(halfbound_agreement(killed, source, 6) <= Rational(1, 2) + Rational(1, 6));

    // partial prefixes count position zero and any partial block
    CHECK(halfbound_agreement(killed, source, 3) == Rational(2, 3));  // 0 ok, 1 ok, 2 flipped

    CHECK_THROWS_AS(halfbound_agreement(clean, source, 0), std::invalid_argument);
    CHECK_THROWS_AS(halfbound_agreement(clean, source, 7), std::invalid_argument);
}

TEST_CASE("randomized harness sweep stays within the budgets") {
    HalfboundConfig cfg;
    cfg.n_max = 4;
    cfg.trials = 25;
    cfg.seed = 7;
    const HalfboundResult res = run_halfbound(cfg);
    CHECK(res.trials == 25);
    CHECK(res.recovered == 25);
    CHECK(res.targeted_flagged == 25);
    CHECK(res.quantitative_ok == 25);
    CHECK(res.ok());
}
