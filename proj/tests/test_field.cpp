#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "fourcs/field.hpp"
#include "testutil.hpp"

using namespace fourcs;
using testutil::error_code_of;

namespace {

// Independent oracle: multiplicative order of a mod p by repeated
// multiplication.
std::uint64_t order_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t x = a % p, k = 1;
    while (x != 1) {
        x = x * a % p;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("make_field GF(17) picks the smallest primitive root") {
    const FieldSpec f = make_field(17, 1);
    REQUIRE(f.q() == 17);
    // Oracle: brute-force order check over 2..16.
    std::uint64_t smallest = 0;
    for (std::uint64_t a = 2; a < 17; ++a)
        if (order_mod(a, 17) == 16) {
            smallest = a;
            break;
        }
    REQUIRE(smallest == 3);
    CHECK(f.alpha() == smallest);
}

TEST_CASE("make_field GF(2) is the trivial group") {
    const FieldSpec f = make_field(2, 1);
    CHECK(f.alpha() == 1);
    CHECK(f.q() == 2);
    CHECK(f.mul(1, 1) == 1);
}

TEST_CASE("make_field GF(25) finds the smallest irreducible quadratic") {
    const FieldSpec f = make_field(5, 2);
    // Oracle: a monic quadratic over Z_5 is irreducible iff it has no root;
    // exactly (25 - 5)/2 = 10 of them qualify, and the smallest by
    // (c0 + 5 c1) is x^2 + 2.
    std::vector<std::pair<int, int>> irr;
    for (int idx = 0; idx < 25; ++idx) {
        const int c0 = idx % 5, c1 = idx / 5;
        bool has_root = false;
        for (int x = 0; x < 5; ++x)
            if ((x * x + c1 * x + c0) % 5 == 0) has_root = true;
        if (!has_root) irr.push_back({c0, c1});
    }
    REQUIRE(irr.size() == 10);
    REQUIRE(irr.front() == std::pair<int, int>{2, 0});
    CHECK(f.modulus() == std::vector<std::uint32_t>{2, 0, 1});

    // Log table is a bijection on the 24 nonzero elements.
    std::set<std::uint64_t> logs;
    for (std::uint64_t x = 1; x < 25; ++x) logs.insert(f.log(x));
    CHECK(logs.size() == 24);
    CHECK(*logs.begin() == 0);
    CHECK(*logs.rbegin() == 23);
}

TEST_CASE("make_field rejects composites and oversized orders") {
    CHECK(error_code_of([] { make_field(15, 1); }) == Errc::not_prime);
    CHECK(error_code_of([] { make_field(2, 21); }) == Errc::limit_exceeded);
}

TEST_CASE("quartic character basics on GF(17)") {
    const FieldSpec f = make_field(17, 1);
    CHECK(quartic_character(f, 1).exponent == 0);
    // chi(-1) = 1 whenever q = 1 (mod 8).
    CHECK(quartic_character(f, 16).exponent == 0);
    // log_3(3) = 1.
    CHECK(quartic_character(f, 3).exponent == 1);
    CHECK(error_code_of([&] { quartic_character(f, 0); }) == Errc::zero_argument);
}

TEST_CASE("quartic character needs 4 | q-1") {
    const FieldSpec f = make_field(7, 1); // q - 1 = 6
    CHECK(error_code_of([&] { quartic_character(f, 3); }) == Errc::bad_order);
}

TEST_CASE("character is multiplicative and even on squares") {
    for (auto [p, k] : {std::pair<unsigned, unsigned>{17, 1}, {5, 2}, {41, 1}, {3, 2}}) {
        const FieldSpec f = make_field(p, k);
        if ((f.q() - 1) % 4 != 0) continue;
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const auto x = 1 + rng() % (f.q() - 1);
            const auto y = 1 + rng() % (f.q() - 1);
            CHECK(quartic_character(f, f.mul(x, y)) ==
                  quartic_character(f, x) * quartic_character(f, y));
            CHECK(quartic_character(f, f.mul(x, x)).exponent % 2 == 0);
        }
        if (f.q() % 8 == 1) CHECK(quartic_character(f, f.neg(1)).exponent == 0);
    }
}

TEST_CASE("alpha has full order and the log table round-trips") {
    for (auto [p, k] : {std::pair<unsigned, unsigned>{17, 1}, {5, 2}, {2, 4}, {3, 3}, {97, 1}}) {
        const FieldSpec f = make_field(p, k);
        const auto q = f.q();
        // alpha^(q-1) = 1 and alpha^m != 1 for 0 < m < q-1.
        CHECK(f.pow(f.alpha(), q - 1) == 1);
        bool any_early_one = false;
        for (std::uint64_t m = 1; m < q - 1; ++m)
            if (f.pow(f.alpha(), m) == 1) any_early_one = true;
        CHECK_FALSE(any_early_one);
        bool roundtrip = true;
        for (std::uint64_t i = 0; i + 1 < q; ++i)
            if (f.log(f.exp(i)) != i) roundtrip = false;
        CHECK(roundtrip);
    }
}

TEST_CASE("field arithmetic sanity in GF(25)") {
    const FieldSpec f = make_field(5, 2);
    // t = element id 5; modulus x^2 + 2 forces t^2 = 3.
    CHECK(f.mul(5, 5) == 3);
    for (std::uint64_t a = 0; a < 25; ++a) {
        CHECK(f.add(a, f.neg(a)) == 0);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.sub(a, a) == 0);
    }
}

TEST_CASE("prime_power decomposition") {
    std::uint32_t p = 0, k = 0;
    REQUIRE(FieldSpec::prime_power(49, p, k));
    CHECK(p == 7);
    CHECK(k == 2);
    REQUIRE(FieldSpec::prime_power(1024, p, k));
    CHECK(p == 2);
    CHECK(k == 10);
    CHECK_FALSE(FieldSpec::prime_power(12, p, k));
    CHECK_FALSE(FieldSpec::prime_power(1, p, k));
}
