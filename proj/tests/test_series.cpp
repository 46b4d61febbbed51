#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/config.hpp"
#include "qlab/modmath.hpp"
#include "qlab/series.hpp"

#include "prop_helpers.hpp"

using namespace qlab;

namespace {

Series exact(std::vector<long long> v) {
    std::vector<Rational> c(v.begin(), v.end());
    return Series(Ring::exact(), std::move(c));
}

std::vector<long long> ints(const Series& s) {
    std::vector<long long> v;
    for (std::size_t i = 0; i < s.precision(); ++i) {
        REQUIRE(is_integral(s.rat_at(i)));
        v.push_back(static_cast<long long>(rat_num(s.rat_at(i))));
    }
    return v;
}

}  // namespace

TEST_CASE("add and neg") {
    const Series a = exact({1, 1});
    const Series b = exact({1, -1});
    const Series s = add(a, b);
    CHECK(s.precision() == 2);
    CHECK(ints(s) == std::vector<long long>{2, 0});

    const Series z = add(a, neg(a));
    CHECK_FALSE(z.zero_prefix_order().has_value());

    CHECK(ints(sub(a, b)) == std::vector<long long>{0, 2});
}

TEST_CASE("add requires matching rings") {
    const Series a = exact({1, 1});
    const Series b = Series(Ring::mod(5), std::vector<std::uint64_t>{1, 1});
    CHECK_THROWS_AS(add(a, b), RingMismatchError);
    CHECK_THROWS_AS(mul(a, b), RingMismatchError);
}

TEST_CASE("mul basics") {
    const Series a = exact({1, 1, 0});
    const Series b = exact({1, -1, 0});
    CHECK(ints(mul(a, b)) == std::vector<long long>{1, 0, -1});

    const Series s = exact({3, 1, 4, 1, 5});
    CHECK(testing::identical(mul(s, Series::one(Ring::exact(), 5)), s));
}

TEST_CASE("mul truncates to the shorter operand") {
    const Series a = exact({1, 2, 3, 4});
    const Series b = exact({1, 1});
    CHECK(mul(a, b).precision() == 2);
}

TEST_CASE("invert geometric series") {
    const Series a = exact({1, -1, 0, 0, 0, 0});
    CHECK(ints(invert(a)) == std::vector<long long>{1, 1, 1, 1, 1, 1});
    CHECK(testing::identical(mul(a, invert(a)), Series::one(Ring::exact(), 6)));
}

TEST_CASE("invert of a non-unit leading coefficient") {
    CHECK_THROWS_AS(invert(exact({0, 1, 1})), NonUnitLeadingError);
    // 2 is not invertible mod 4
    const Series m = Series(Ring::mod(4), std::vector<std::uint64_t>{2, 1, 1});
    CHECK_THROWS_AS(invert(m), NonUnitLeadingError);
}

TEST_CASE("invert self-inverse mod 4") {
    const Series a = Series(Ring::mod(4), std::vector<std::uint64_t>{1, 2});
    const Series inv = invert(a);
    CHECK(inv.mod() == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("pow basics") {
    CHECK(ints(pow(exact({1, 1, 0}), 2)) == std::vector<long long>{1, 2, 1});
    const Series s = exact({2, 5, 7});
    CHECK(testing::identical(pow(s, 0), Series::one(Ring::exact(), 3)));
    CHECK_THROWS_AS(pow(exact({0, 1}), -1), NonUnitLeadingError);
}

TEST_CASE("dilate") {
    CHECK(ints(dilate(exact({1, 1}), 5)) ==
          std::vector<long long>{1, 0, 0, 0, 0, 1, 0, 0, 0, 0});
    const Series s = exact({4, 7, 1});
    CHECK(testing::identical(dilate(s, 1), s));
}

TEST_CASE("dilate clamps to the precision cap") {
    const std::size_t old_cap = config::precision_cap();
    config::set_precision_cap(16);
    const Series d = dilate(exact({1, 2, 3, 4, 5, 6}), 4);
    CHECK(d.precision() == 16);
    CHECK(d.rat_at(12) == Rational(4));
    config::set_precision_cap(old_cap);
}

TEST_CASE("mul_monomial") {
    CHECK(ints(mul_monomial(exact({1, 1, 0, 0}), Rational(1), 2)) ==
          std::vector<long long>{0, 0, 1, 1});
    const Series z = mul_monomial(exact({3, 2, 1}), Rational(0), 1);
    CHECK_FALSE(z.zero_prefix_order().has_value());
}

TEST_CASE("dissect") {
    const Series a = exact({1, 2, 3, 4});
    const Series odd = dissect(a, 2, 1);
    CHECK(odd.precision() == 2);
    CHECK(ints(odd) == std::vector<long long>{2, 4});
    CHECK_THROWS_AS(dissect(exact({1}), 4, 2), InsufficientPrecisionError);
}

TEST_CASE("reduce_mod") {
    const Series a = exact({8, -16, 5});
    const Series r = reduce_mod(a, 8);
    CHECK(r.mod() == std::vector<std::uint64_t>{0, 0, 5});

    const Series frac(Ring::exact(), std::vector<Rational>{Rational(1), Rational(3, 2)});
    CHECK_THROWS_AS(reduce_mod(frac, 4), NonIntegralCoefficientError);
    try {
        reduce_mod(frac, 4);
    } catch (const NonIntegralCoefficientError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("div_exact_int") {
    CHECK(ints(div_exact_int(exact({0, 8, -16}), Integer(8))) ==
          std::vector<long long>{0, 1, -2});
    CHECK_THROWS_AS(div_exact_int(exact({1, 1}), Integer(2)), NotDivisibleError);
    try {
        div_exact_int(exact({2, 1}), Integer(2));
    } catch (const NotDivisibleError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("scaled congruence") {
    // all-integer series: plain mod check
    CHECK(scaled_congruence_zero(exact({0, 8, -16}), 8));
    CHECK_FALSE(scaled_congruence_zero(exact({0, 8, -12}), 8));

    // denominators fold into the modulus: 3/2 == 0 (mod 4) iff 3 == 0 (mod 8)
    const Series frac(Ring::exact(), std::vector<Rational>{Rational(0), Rational(3, 2)});
    CHECK_FALSE(scaled_congruence_zero(frac, 4));
    const Series ok(Ring::exact(), std::vector<Rational>{Rational(0), Rational(8, 2)});
    CHECK(scaled_congruence_zero(ok, 4));
    CHECK(scaled_congruence_first_failure(frac, 4) == std::size_t{1});
}

TEST_CASE("equal_to_precision") {
    const Series s = exact({1, 2, 3});
    CHECK(equal_to_precision(s, s, 3).equal);

    const Series a = exact({1, 1, 0, 0, 0, 0});
    const Series b = exact({1, 1, 0, 0, 0, 1});
    const CompareResult cmp = equal_to_precision(a, b, 6);
    CHECK_FALSE(cmp.equal);
    CHECK(cmp.index == 5);
    CHECK(cmp.lhs == "0");
    CHECK(cmp.rhs == "1");

    CHECK_THROWS_AS(equal_to_precision(a, b, 7), InsufficientPrecisionError);
}

TEST_CASE("alternate_signs") {
    CHECK(ints(alternate_signs(exact({1, 2, 3, 4}))) == std::vector<long long>{1, -2, 3, -4});
}

TEST_CASE("modular inverse") {
    CHECK(mod_inverse(4, 5) == 4);
    CHECK(mod_inverse(24 % 25, 25) == 24);
    CHECK(mod_inverse(24 % 125, 125) == 99);
    CHECK(mod_inverse(3, 8) == 3);
    CHECK_FALSE(try_mod_inverse(6, 8).has_value());
    CHECK_THROWS_AS(mod_inverse(2, 4), NonUnitLeadingError);
    for (std::uint64_t m : {5ULL, 8ULL, 25ULL, 4294967296ULL}) {
        for (std::uint64_t a : {1ULL, 3ULL, 7ULL, 11ULL, 4294967295ULL}) {
            if (auto inv = try_mod_inverse(a, m)) CHECK(mod_mul(a % m, *inv, m) == 1);
        }
    }
}

TEST_CASE("ring laws hold on random series") {
    CHECK_NOTHROW(testing::check_ring_laws(20240801, 300));
}

TEST_CASE("dissection round trips") {
    CHECK_NOTHROW(testing::check_dissection_roundtrip(20240802, 300));
}

TEST_CASE("invert round trips") {
    CHECK_NOTHROW(testing::check_invert_roundtrip(20240803, 250));
}

TEST_CASE("reduce_mod is a homomorphism") {
    CHECK_NOTHROW(testing::check_reduce_hom(20240804, 300));
}

TEST_CASE("pow addition law") {
    CHECK_NOTHROW(testing::check_pow_law(20240805, 200));
}

TEST_CASE("karatsuba path matches schoolbook") {
    // force the dense subquadratic path and compare against a direct product
    testing::Rng rng(99);
    const Ring ring = Ring::mod(4294967291ULL);
    const std::size_t n = 5000;
    const Series a = testing::random_series(rng, ring, n);
    const Series b = testing::random_series(rng, ring, n);
    const Series fast = mul(a, b);
    std::vector<std::uint64_t> slow(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.mod_at(i) == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            slow[i + j] = mod_add(slow[i + j], mod_mul(a.mod_at(i), b.mod_at(j), ring.modulus),
                                  ring.modulus);
    }
    CHECK(testing::identical(fast, Series(ring, std::move(slow))));
}
