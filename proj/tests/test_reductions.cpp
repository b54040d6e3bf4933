#include <set>

#include "coarse/errors.hpp"
#include "coarse/intervals.hpp"
#include "coarse/reductions.hpp"
#include "coarse/rng.hpp"
#include "doctest.h"

using namespace coarse;

namespace {

Multiset reassemble(const std::vector<BigInt>& solo, const Multiset& twin) {
    Multiset j;
    for (const BigInt& v : solo) ++j[v];
    for (const auto& [v, c] : twin) j[v] += 2 * c;
    for (auto it = j.begin(); it != j.end();)
        it = it->second == 0 ? j.erase(it) : std::next(it);
    return j;
}

}  // namespace

TEST_CASE("multiset split on the worked example") {
    // {0,0,0,0,0,1,1,2} -> ({0,2}, {0,0,1})
    const Multiset j = {{big(0), 5}, {big(1), 2}, {big(2), 1}};
    const auto [solo, twin] = star_split_multiset(j);
    CHECK(solo == std::vector<BigInt>{big(0), big(2)});
    CHECK(twin == Multiset{{big(0), 2}, {big(1), 1}});
    CHECK(reassemble(solo, twin) == j);
    CHECK(multiset_size(j) == 8);
}

TEST_CASE("split reassembles on random multisets") {
    Xoshiro256ss gen(5150);
    for (int trial = 0; trial < 300; ++trial) {
        Multiset j;
        const std::uint64_t distinct = 1 + uniform_below(gen, 12);
        for (std::uint64_t i = 0; i < distinct; ++i)
            j[big(uniform_below(gen, 40))] = 1 + uniform_below(gen, 6);
        const auto [solo, twin] = star_split_multiset(j);
        CHECK(reassemble(solo, twin) == j);
        // solo keeps exactly the odd-multiplicity values, once each
        std::set<BigInt> solo_set(solo.begin(), solo.end());
        CHECK(solo_set.size() == solo.size());
        for (const auto& [v, c] : j) {
            CHECK(solo_set.count(v) == (c % 2));
            const auto it = twin.find(v);
            const std::uint64_t pairs = it == twin.end() ? 0 : it->second;
            CHECK(pairs == c / 2);
        }
    }
}

TEST_CASE("interval partition under simple reductions") {
    SUBCASE("identity leaves everything solo") {
        const StarSplit s = partition_interval(parse_reduction("x"), 3);
        CHECK(s.solo == std::vector<std::uint64_t>{3, 4, 5});
        CHECK(s.twin1.empty());
        CHECK(s.twin2.empty());
        CHECK(s.j_solo == std::vector<BigInt>{big(3), big(4), big(5)});
        CHECK(s.j_twin.empty());
        CHECK(s.max_image == 5);
    }
    SUBCASE("halving pairs neighbours") {
        // I_4 = [6,10): images 3,3,4,4
        const StarSplit s = partition_interval(parse_reduction("x / 2"), 4);
        CHECK(s.solo.empty());
        CHECK(s.twin1 == std::vector<std::uint64_t>{6, 8});
        CHECK(s.twin2 == std::vector<std::uint64_t>{7, 9});
        CHECK(s.j_twin == Multiset{{big(3), 1}, {big(4), 1}});
        CHECK(s.max_image == 4);
    }
    SUBCASE("modulus mixes solo and twins") {
        // I_5 = [10,15): images 1,2,0,1,2
        const StarSplit s = partition_interval(parse_reduction("x % 3"), 5);
        CHECK(s.solo == std::vector<std::uint64_t>{12});
        CHECK(s.j_solo == std::vector<BigInt>{big(0)});
        CHECK(s.twin1 == std::vector<std::uint64_t>{10, 11});
        CHECK(s.twin2 == std::vector<std::uint64_t>{13, 14});
        CHECK(s.j_twin == Multiset{{big(1), 1}, {big(2), 1}});
    }
    SUBCASE("constant interval collapses to pairs plus one solo") {
        // I_3 = [3,6): three copies of 7
        const StarSplit s = partition_interval(parse_reduction("7"), 3);
        CHECK(s.solo == std::vector<std::uint64_t>{5});  // leftover is the last position
        CHECK(s.twin1 == std::vector<std::uint64_t>{3});
        CHECK(s.twin2 == std::vector<std::uint64_t>{4});
        CHECK(s.max_image == 7);
    }
}

TEST_CASE("partition positions always tile the interval") {
    Xoshiro256ss gen(777);
    const std::vector<FuncSpec> fs = {parse_reduction("x"), parse_reduction("x / 3"),
                                      parse_reduction("x % 7"), parse_reduction("x / 2 % 5"),
                                      parse_reduction("[9,9,9] then x % 2")};
    for (const FuncSpec& f : fs) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::uint64_t n = 1 + uniform_below(gen, 30);
            const StarSplit s = partition_interval(f, n);
            std::vector<std::uint64_t> all;
            all.insert(all.end(), s.solo.begin(), s.solo.end());
            all.insert(all.end(), s.twin1.begin(), s.twin1.end());
            all.insert(all.end(), s.twin2.begin(), s.twin2.end());
            std::sort(all.begin(), all.end());
            const PosRange r = interval_bounds(IntervalKind::Triangular, n);
            REQUIRE(all.size() == r.length());
            for (std::uint64_t i = 0; i < all.size(); ++i) CHECK(all[i] == r.lo + i);
            CHECK(s.twin1.size() == s.twin2.size());
            // twins carry the same image multiset on both sides
            Multiset m1, m2;
            for (std::uint64_t x : s.twin1) ++m1[f(x)];
            for (std::uint64_t x : s.twin2) ++m2[f(x)];
            CHECK(m1 == m2);
            // solo images are distinct and disjoint from nothing in particular,
            // but their multiset matches the odd part of the image multiset
            const auto [solo_vals, twin_vals] = star_split_multiset(multiset_image(f, n));
            CHECK(solo_vals == s.j_solo);
            CHECK(twin_vals == s.j_twin);
        }
    }
}

TEST_CASE("membership helpers") {
    const FuncSpec id = parse_reduction("x");
    const BitSeq a = BitSeq::from_string("0110010");
    for (std::uint64_t x = 0; x < 7; ++x) CHECK(be_membership(id, a, x) == a[x]);
    try {
        be_membership(id, a, 7);
        FAIL("expected InsufficientPrefix");
    } catch (const InsufficientPrefix& e) {
        CHECK(e.required() == 8);
    }
    const FuncSpec half = parse_reduction("x / 2");
    CHECK(be_membership(half, a, 13) == a[6]);

    // bstar: x in twin1 of its own interval
    CHECK(bstar_membership(half, 6));
    CHECK(!bstar_membership(half, 7));
    CHECK(bstar_membership(half, 8));
    CHECK(!bstar_membership(half, 9));
    CHECK(!bstar_membership(id, 4));  // identity has no twins
}

TEST_CASE("partition table caches by reference") {
    PartitionTable table({parse_reduction("x"), parse_reduction("x / 2")});
    const StarSplit& first = table.get(1, 4);
    const StarSplit& again = table.get(1, 4);
    CHECK(&first == &again);
    CHECK(first.twin1 == std::vector<std::uint64_t>{6, 8});
    CHECK_THROWS_AS(table.get(2, 4), std::out_of_range);
}
