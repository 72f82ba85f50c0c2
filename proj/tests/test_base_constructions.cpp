#include <catch2/catch_amalgamated.hpp>

#include "fourcs/base_constructions.hpp"
#include "fourcs/construct.hpp"
#include "fourcs/scan.hpp"
#include "testutil.hpp"

using namespace fourcs;
using testutil::error_code_of;

namespace {

// Independent character oracle over a prime field: index via naive powering
// of a brute-forced primitive root.
struct NaiveChar {
    std::uint64_t p;
    std::uint64_t g;
    std::vector<std::uint64_t> ind;

    explicit NaiveChar(std::uint64_t prime) : p(prime), ind(prime, 0) {
        for (g = 2; g < p; ++g) {
            std::uint64_t x = g, k = 1;
            while (x != 1) {
                x = x * g % p;
                ++k;
            }
            if (k == p - 1) break;
        }
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i + 1 < p; ++i) {
            ind[x] = i;
            x = x * g % p;
        }
    }

    bool valid_base(std::uint64_t x) const {
        if (x < 2) return false;
        const std::uint64_t w = ((x * x % p) + p + 1 - x) % p;
        if (w == 0) return false;
        return (ind[x] % 2 == 1) && (ind[w] % 2 == 1) && ((ind[x] + ind[w]) % 4 == 0);
    }
};

} // namespace

TEST_CASE("find_base_x on GF(17) matches the brute-force oracle") {
    const NaiveChar oracle(17);
    std::uint64_t expected = 0;
    for (std::uint64_t x = 2; x < 17; ++x)
        if (oracle.valid_base(x)) {
            expected = x;
            break;
        }
    REQUIRE(expected == 3);

    const FieldSpec f = make_field(17, 1);
    const auto base = find_base_x(f);
    CHECK(base.x == 3);
    CHECK(base.base_cycle == canonicalize(0, 3, 2, 9));

    // All valid witnesses agree with the oracle.
    const auto all = find_base_candidates(f);
    std::vector<std::uint64_t> got;
    for (const auto& b : all) got.push_back(b.x);
    std::vector<std::uint64_t> want;
    for (std::uint64_t x = 2; x < 17; ++x)
        if (oracle.valid_base(x)) want.push_back(x);
    CHECK(got == want);
    CHECK(want == std::vector<std::uint64_t>{3, 6});
}

TEST_CASE("find_base_x rejects powers of three") {
    CHECK(error_code_of([] {
              const FieldSpec f = make_field(3, 2);
              find_base_x(f);
          }) == Errc::bad_order);
}

TEST_CASE("find_base_x on GF(25) satisfies all three conditions") {
    const FieldSpec f = make_field(5, 2);
    const auto base = find_base_x(f);
    const auto x = base.x;
    const auto w = f.add(f.sub(f.mul(x, x), x), 1);
    CHECK(quartic_character(f, f.mul(x, x)).exponent == 2);
    CHECK(quartic_character(f, f.mul(w, w)).exponent == 2);
    CHECK(quartic_character(f, f.mul(x, w)).exponent == 0);
}

TEST_CASE("character 4CS(17): cycle count and base translates") {
    const auto sys = construct_character_4cs(17);
    CHECK(sys.order == 17);
    CHECK(sys.cycles.size() == 34);
    CHECK(validate_system(sys).ok);
    CHECK(sys.contains(canonicalize(0, 3, 2, 9)));
    // Second base cycle: multiplier alpha^4 = 3^4 = 13 (mod 17).
    CHECK(sys.contains(canonicalize(0, 5, 9, 15)));
}

TEST_CASE("character system is invariant under z -> z*alpha^4 + y") {
    const FieldSpec f = make_field(17, 1);
    const auto sys = construct_character_4cs(f, find_base_x(f));
    std::set<FourCycle> have(sys.cycles.begin(), sys.cycles.end());
    const auto m = f.exp(4);
    for (std::uint64_t y : {0ull, 1ull, 11ull}) {
        for (const auto& c : sys.cycles) {
            const auto img = canonicalize(Vertex(f.add(f.mul(c.v[0], m), y)),
                                          Vertex(f.add(f.mul(c.v[1], m), y)),
                                          Vertex(f.add(f.mul(c.v[2], m), y)),
                                          Vertex(f.add(f.mul(c.v[3], m), y)));
            CHECK(have.count(img));
        }
    }
}

TEST_CASE("opposite edges of developed cycles land in opposite character classes") {
    const FieldSpec f = make_field(17, 1);
    const auto sys = construct_character_4cs(f, find_base_x(f));
    for (const auto& c : sys.cycles) {
        const auto d1 = f.sub(c.v[0], c.v[1]), d2 = f.sub(c.v[2], c.v[3]);
        const auto e1 = f.sub(c.v[1], c.v[2]), e2 = f.sub(c.v[3], c.v[0]);
        CHECK((quartic_character(f, d1).exponent + 2) % 4 ==
              quartic_character(f, d2).exponent);
        CHECK((quartic_character(f, e1).exponent + 2) % 4 ==
              quartic_character(f, e2).exponent);
    }
}

TEST_CASE("character 4CS(41) is strictly 4-sparse") {
    const auto sys = construct_character_4cs(41);
    CHECK(sys.cycles.size() == 205);
    REQUIRE(validate_system(sys).ok);
    const auto rep = is_strictly_r_sparse(sys, 4);
    CHECK(rep.strict);
    CHECK(rep.jointed_diamonds == 0);
}

TEST_CASE("construct_character_4cs rejects bad orders") {
    CHECK(error_code_of([] { construct_character_4cs(27); }) == Errc::bad_order);
    CHECK(error_code_of([] { construct_character_4cs(9); }) == Errc::bad_order);
    CHECK(error_code_of([] { construct_character_4cs(13); }) == Errc::bad_order); // 13 != 1 mod 8
}

TEST_CASE("cyclic 4CS(9)") {
    const auto sys = construct_cyclic_4cs9();
    CHECK(sys.order == 9);
    CHECK(sys.cycles.size() == 9);
    CHECK(validate_system(sys).ok);
    CHECK(sys.contains(canonicalize(0, 1, 8, 5)));
    CHECK(sys.contains(canonicalize(1, 2, 0, 6))); // translate a = 1
    const auto rep = is_strictly_r_sparse(sys, 4);
    CHECK(rep.strict);
    CHECK(rep.double_diamonds == 0);
    CHECK(rep.jointed_diamonds == 0);
}

TEST_CASE("construct_any routes") {
    GddProvider provider;
    SECTION("v = 33 goes through composition case 2") {
        const auto r = construct_any(33, provider);
        CHECK(r.route == "composition");
        CHECK(r.case_id == 2);
        CHECK(r.system.cycles.size() == 132);
        CHECK(validate_system(r.system).ok);
    }
    SECTION("v = 25 prefers the direct character construction") {
        const auto r = construct_any(25, provider);
        CHECK(r.route == "character");
        CHECK(r.system.cycles.size() == 75);
    }
    SECTION("v = 9 is cyclic, v = 1 trivial") {
        CHECK(construct_any(9, provider).route == "cyclic");
        CHECK(construct_any(1, provider).route == "trivial");
    }
    SECTION("inadmissible orders are rejected") {
        CHECK(error_code_of([&] { construct_any(12, provider); }) == Errc::not_admissible);
    }
}
