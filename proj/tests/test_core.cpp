#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pov/core.hpp"
#include "testutil.hpp"

using namespace pov;
using povtest::make_polity;

TEST_CASE("polity creation validates its invariants") {
    CHECK_THROWS_AS(Polity::create(Rat(0), {Rat(1)}), validation_error);
    CHECK_THROWS_AS(Polity::create(Rat(-2), {Rat(1)}), validation_error);
    CHECK_THROWS_AS(Polity::create(Rat(5), {}), validation_error);
    CHECK_THROWS_AS(Polity::create(Rat(5), {Rat(-6)}), validation_error);
    CHECK_THROWS_AS(Polity::create(Rat(5), {Rat(1), Rat(1)}), validation_error);
    CHECK_THROWS_AS(Polity::create(Rat(5), {Rat(2), Rat(-2)}), validation_error);

    const Polity polity = make_polity(5, {-4, -3, 3, 4});
    CHECK(polity.size() == 4);
    CHECK(polity.peak(1) == Rat(-4));
    CHECK(polity.peak(4) == Rat(4));
    CHECK(polity.contains(Rat(5)));
    CHECK_FALSE(polity.contains(rat_from_string("-51/10")));
}

TEST_CASE("quadratic utility and its exact arithmetic") {
    CHECK(utility(Rat(-3), Rat(4)) == Rat(-49));
    CHECK(utility(Rat(2), Rat(2)) == Rat(0));
    // -(x - theta)^2 with x = 1/3, theta = -3 -> -(10/3)^2.
    CHECK(utility(Rat(-3), ratio(1, 3)) == ratio(-100, 9));
}

TEST_CASE("medians for odd and even polities") {
    const MedianTriple odd = medians(make_polity(10, {-5, -1, 0, 2, 7}));
    CHECK(odd.left == 3);
    CHECK(odd.mid == 3);
    CHECK(odd.right == 3);

    const MedianTriple even = medians(make_polity(5, {-4, -3, 3, 4}));
    CHECK(even.left == 2);
    CHECK(even.mid == 2);
    CHECK(even.right == 3);
}

TEST_CASE("median_of_voters picks middle agents of the subset") {
    const Polity polity = make_polity(10, {-9, -5, -1, 0, 2, 7, 8});
    CHECK(median_of_voters(polity, {2, 5, 6}) == std::pair<int, int>{5, 5});
    CHECK(median_of_voters(polity, {1, 2, 6, 7}) == std::pair<int, int>{2, 6});
    CHECK(median_of_voters(polity, {4}) == std::pair<int, int>{4, 4});
    // Duplicates collapse; order does not matter.
    CHECK(median_of_voters(polity, {6, 2, 2, 5}) == std::pair<int, int>{5, 5});
    CHECK_THROWS_AS(median_of_voters(polity, {}), validation_error);
    CHECK_THROWS_AS(median_of_voters(polity, {8}), validation_error);
}

TEST_CASE("mirroring negates and reverses peaks") {
    const Polity polity = make_polity(10, {-5, -1, 0, 2, 7});
    const Polity mirror = polity.mirrored();
    CHECK(mirror.peaks() == std::vector<Rat>{Rat(-7), Rat(-2), Rat(0), Rat(1), Rat(5)});
    CHECK(mirror.bound() == polity.bound());
    // Involution: mirroring twice restores the original.
    CHECK(mirror.mirrored().peaks() == polity.peaks());
}

TEST_CASE("compare_distance agrees with explicit absolute distances") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const Rat peak = ratio(static_cast<long>(rng.below(161)) - 80, 4);
        const Rat a = ratio(static_cast<long>(rng.below(161)) - 80, 4);
        const Rat b = ratio(static_cast<long>(rng.below(161)) - 80, 4);
        const Rat da = abs_diff(a, peak);
        const Rat db = abs_diff(b, peak);
        const int expected = da < db ? -1 : (db < da ? 1 : 0);
        const int got = compare_distance(peak, a, b);
        const int sign = got < 0 ? -1 : (got > 0 ? 1 : 0);
        CHECK(sign == expected);
    }
}

TEST_CASE("rational parsing and printing round-trips") {
    CHECK(rat_from_string("-98/3") == ratio(-98, 3));
    CHECK(rat_from_string("0.5") == ratio(1, 2));
    CHECK(rat_from_string("-3.25") == ratio(-13, 4));
    CHECK(rat_from_string("2e-3") == ratio(1, 500));
    CHECK(rat_from_string(" 7 ") == Rat(7));
    CHECK(rat_to_string(ratio(-98, 3)) == "-98/3");
    CHECK(rat_to_string(Rat(4)) == "4");
    CHECK_THROWS_AS(rat_from_string("1/0"), validation_error);
    CHECK_THROWS_AS(rat_from_string("abc"), validation_error);
    CHECK_THROWS_AS(rat_from_string(""), validation_error);

    CHECK(rat_from_double(0.5) == ratio(1, 2));
    CHECK(rat_from_double(-32.0) == Rat(-32));
    CHECK_THROWS_AS(rat_from_double(std::numeric_limits<double>::infinity()), validation_error);

    // Round-trip through the string form is lossless.
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Rat value = ratio(static_cast<long>(rng.below(20001)) - 10000,
                                1 + static_cast<long>(rng.below(999)));
        CHECK(rat_from_string(rat_to_string(value)) == value);
    }
}

TEST_CASE("splitmix rejection sampling stays in range and hits all residues") {
    SplitMix64 rng(3);
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t draw = rng.below(5);
        REQUIRE(draw < 5);
        ++seen[static_cast<std::size_t>(draw)];
    }
    for (int count : seen) CHECK(count > 300);
}
