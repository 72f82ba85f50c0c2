#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "fourcs/composition.hpp"
#include "fourcs/construct.hpp"
#include "testutil.hpp"

using namespace fourcs;
using testutil::error_code_of;

namespace {

// Brute-force oracle: the 24 cross edges of K_{2,2,2,2} on block x {0,1}
// with parts {x} x {0,1} and labels 2x + i.
std::set<Edge> k2222_cross_edges(const std::array<Vertex, 4>& block) {
    std::set<Edge> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (Vertex a = 0; a < 2; ++a)
                for (Vertex b = 0; b < 2; ++b)
                    out.insert(make_edge(2 * block[i] + a, 2 * block[j] + b));
    return out;
}

} // namespace

TEST_CASE("decompose_k2222 covers the 24 cross edges exactly, any role order") {
    std::array<Vertex, 4> pts{2, 5, 7, 11};
    std::sort(pts.begin(), pts.end());
    const auto expect = k2222_cross_edges(pts);
    do {
        const auto cycles = decompose_k2222(pts);
        std::set<Edge> got;
        std::size_t slots = 0;
        for (const auto& c : cycles)
            for (const auto& e : c.edges()) {
                got.insert(e);
                ++slots;
            }
        CHECK(slots == 24);
        CHECK(got == expect); // no repeats, exactly the cross pairs
        // No two cycles share a diagonal.
        std::set<Edge> diags;
        for (const auto& c : cycles)
            for (const auto& d : c.diagonals()) CHECK(diags.insert(d).second);
    } while (std::next_permutation(pts.begin(), pts.end()));
}

TEST_CASE("decompose_k2222 contains the base cycle and its flip") {
    const std::array<Vertex, 4> pts{0, 1, 2, 3};
    const auto cycles = decompose_k2222(pts);
    auto L = [](Vertex x, Vertex i) { return 2 * x + i; };
    const auto base = canonicalize(L(0, 0), L(1, 0), L(2, 1), L(3, 0));
    const auto flip = canonicalize(L(0, 1), L(1, 1), L(2, 0), L(3, 1));
    CHECK(std::count(cycles.begin(), cycles.end(), base) == 1);
    CHECK(std::count(cycles.begin(), cycles.end(), flip) == 1);
    // Within-part pairs are never edges.
    for (const auto& c : cycles)
        for (const auto& e : c.edges()) CHECK(e.first / 2 != e.second / 2);
}

TEST_CASE("decompose_k2222 rejects repeated points") {
    CHECK(error_code_of([] { decompose_k2222({1, 2, 2, 3}); }) == Errc::duplicate_point);
}

TEST_CASE("double_plus_one: 4^4 plus 4CS(9) gives a strictly 4-sparse 4CS(33)") {
    const auto gdd = construct_ag24_gdd();
    const auto sys = double_plus_one(gdd, {{4, construct_cyclic_4cs9()}});
    CHECK(sys.order == 33);
    CHECK(sys.cycles.size() == 132);
    CHECK(validate_system(sys).ok);
    // Edge accounting: sum over groups of (2g+1)(2g)/8 plus 6 per block.
    CHECK(4 * 9 + 6 * 16 == 132);
}

TEST_CASE("double_plus_one rejects missing or mis-sized ingredients") {
    const auto gdd = construct_ag24_gdd();
    CHECK(error_code_of([&] { double_plus_one(gdd, {}); }) == Errc::ingredient_mismatch);
    CHECK(error_code_of([&] {
              double_plus_one(gdd, {{4, construct_character_4cs(17)}});
          }) == Errc::ingredient_mismatch);
}

TEST_CASE("quadruple_case4 rejects wrong GDD types and ingredients") {
    const auto cs17 = construct_character_4cs(17);
    const auto cs41 = construct_character_4cs(41);
    CHECK(error_code_of([&] {
              quadruple_case4(construct_ag24_gdd(), cs17, cs41);
          }) == Errc::wrong_type);
    // Right type, wrong ingredient order for |G| = 5.
    const auto gdd = search_gdd(parse_gdd_type("2^9,5^1"), 1);
    CHECK(error_code_of([&] { quadruple_case4(gdd, cs17, cs17); }) ==
          Errc::ingredient_mismatch);
}

TEST_CASE("composed outputs avoid diagonals and jointed diamonds") {
    const auto sys = double_plus_one(construct_ag24_gdd(), {{4, construct_cyclic_4cs9()}});
    CHECK(find_double_diamonds(sys).empty());
    CHECK(find_jointed_diamonds(sys).empty());
}

TEST_CASE("compose_for_order picks the right case") {
    GddProvider provider;
    const auto r33 = compose_for_order(33, provider);
    CHECK(r33.case_id == 2);
    const auto r65 = compose_for_order(65, provider);
    CHECK(r65.case_id == 3);
    CHECK(r65.system.cycles.size() == 65 * 64 / 8);
    CHECK(error_code_of([&] { compose_for_order(49, provider); }) == Errc::gdd_unavailable);
}
