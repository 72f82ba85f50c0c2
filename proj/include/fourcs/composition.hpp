#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/gdd.hpp"
#include "fourcs/scan.hpp"

namespace fourcs {

struct ComposeOptions {
    /// Composed systems up to this order get a full strict-4-sparse scan at
    /// construction time; larger ones are only validated as systems.
    Vertex certify_limit = 500;
    ScanOptions scan{};
};

/// The six 4-cycles decomposing K_{2,2,2,2} on {a,b,c,d} x {0,1} with parts
/// {x} x {0,1}: the orbit of ((a,0),(b,0),(c,1),(d,0)) under the order-6
/// group generated by the 3-cycle a->b->c->a (d fixed) on first coordinates
/// and the flip of the second coordinate. Point (x, i) gets label 2x + i.
/// Valid for any role assignment; cover exactly the 24 cross edges and no
/// two share a diagonal.
inline std::array<FourCycle, 6> decompose_k2222(const std::array<Vertex, 4>& block) {
    const auto [a, b, c, d] = std::tuple{block[0], block[1], block[2], block[3]};
    if (a == b || a == c || a == d || b == c || b == d || c == d)
        raise(Errc::duplicate_point, "block points must be distinct");
    auto L = [](Vertex x, Vertex i) { return 2 * x + i; };
    std::array<FourCycle, 6> out;
    int k = 0;
    const std::array<std::array<Vertex, 3>, 3> rho{{{a, b, c}, {b, c, a}, {c, a, b}}};
    for (Vertex flip = 0; flip < 2; ++flip)
        for (const auto& [x, y, z] : rho)
            out[k++] = canonicalize(L(x, flip), L(y, flip), L(z, 1 - flip), L(d, flip));
    return out;
}

namespace detail_compose {

inline void certify(const CyclePacking& sys, const ComposeOptions& opt, const char* what) {
    if (auto rep = validate_system(sys); !rep)
        raise(Errc::validation_failed, std::string(what) + ": " + rep.detail);
    if (sys.order <= opt.certify_limit) {
        const auto scan = is_strictly_r_sparse(sys, 4, opt.scan);
        if (!scan.strict)
            raise(Errc::validation_failed,
                  std::string(what) + ": output is not strictly 4-sparse (dd=" +
                      std::to_string(scan.double_diamonds) +
                      ", rMax=" + std::to_string(scan.r_max) + ")");
    }
}

/// Copies an ingredient 4CS of order f*|G|+1 onto (G x [f]) u {infinity}
/// through the order-preserving relabeling; the ingredient's last label goes
/// to the shared infinity point.
inline void place_ingredient(std::vector<FourCycle>& out, const CyclePacking& ingredient,
                             const std::vector<std::uint32_t>& group, std::uint32_t f,
                             Vertex infinity) {
    std::vector<Vertex> map(ingredient.order);
    auto sorted = group;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t s = 0; s < sorted.size(); ++s)
        for (std::uint32_t x = 0; x < f; ++x) map[f * s + x] = Vertex(f * sorted[s] + x);
    map[ingredient.order - 1] = infinity;
    for (const auto& c : ingredient.cycles)
        out.push_back(canonicalize(map[c.v[0]], map[c.v[1]], map[c.v[2]], map[c.v[3]]));
}

inline void check_ingredient(const CyclePacking& ing, std::uint32_t group_size, std::uint32_t f) {
    const std::uint32_t want = f * group_size + 1;
    if (ing.order != want)
        raise(Errc::ingredient_mismatch, "group size " + std::to_string(group_size) +
                                             " needs an ingredient of order " +
                                             std::to_string(want) + ", got " +
                                             std::to_string(ing.order));
    if (auto rep = validate_system(ing); !rep)
        raise(Errc::ingredient_mismatch, "ingredient of order " + std::to_string(ing.order) +
                                             " is not a 4CS: " + rep.detail);
}

} // namespace detail_compose

/// The doubling construction (Cases 1-3): on W = (points x {0,1}) u {inf},
/// each group carries a relabeled ingredient 4CS(2|G|+1), each block a
/// K_{2,2,2,2} decomposition. Point (x, i) gets label 2x + i, infinity the
/// label 2n. Ingredients are looked up by group size.
inline FourCycleSystem double_plus_one(const GroupDivisibleDesign& gdd,
                                       const std::map<std::uint32_t, CyclePacking>& ingredients,
                                       const ComposeOptions& opt = {}) {
    if (auto rep = validate_gdd(gdd); !rep)
        raise(Errc::validation_failed, "bad GDD: " + rep.detail);
    FourCycleSystem sys;
    sys.order = 2 * gdd.n + 1;
    const Vertex infinity = 2 * gdd.n;
    for (const auto& grp : gdd.groups) {
        const auto it = ingredients.find(std::uint32_t(grp.size()));
        if (it == ingredients.end())
            raise(Errc::ingredient_mismatch,
                  "no ingredient for group size " + std::to_string(grp.size()));
        detail_compose::check_ingredient(it->second, std::uint32_t(grp.size()), 2);
        detail_compose::place_ingredient(sys.cycles, it->second, grp, 2, infinity);
    }
    for (const auto& blk : gdd.blocks) {
        auto sorted = blk;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& c : decompose_k2222(sorted)) sys.cycles.push_back(c);
    }
    detail_compose::certify(sys, opt, "double_plus_one");
    return sys;
}

/// The quadrupling construction (Case 4): takes a 4-GDD of type 2^(3t) 5^1,
/// t >= 3. Each block expands to B x {0,1,2,3} carrying an AG(2,4)-derived
/// 4-GDD of type 4^4 whose blocks are then doubled via decompose_k2222; each
/// group carries a 4CS(17) (size 2) or 4CS(41) (size 5) on (G x [8]) u {inf}.
/// Point (x, j, i) gets label 8x + 2j + i, infinity the label 8n. The result
/// is a 4CS(48t + 41).
inline FourCycleSystem quadruple_case4(const GroupDivisibleDesign& gdd,
                                       const CyclePacking& cs17, const CyclePacking& cs41,
                                       const ComposeOptions& opt = {}) {
    {
        const auto t = gdd.type_signature();
        const bool shape_ok = t.size() == 2 && t.count(2) && t.count(5) && t.at(5) == 1 &&
                              t.at(2) % 3 == 0 && t.at(2) / 3 >= 3;
        if (!shape_ok)
            raise(Errc::wrong_type, "need a 4-GDD of type 2^(3t) 5^1 with t >= 3, got " +
                                        format_gdd_type(t));
    }
    if (auto rep = validate_gdd(gdd); !rep)
        raise(Errc::validation_failed, "bad GDD: " + rep.detail);
    detail_compose::check_ingredient(cs17, 2, 8);
    detail_compose::check_ingredient(cs41, 5, 8);

    FourCycleSystem sys;
    sys.order = 8 * gdd.n + 1;
    const Vertex infinity = 8 * gdd.n;
    for (const auto& grp : gdd.groups)
        detail_compose::place_ingredient(sys.cycles, grp.size() == 2 ? cs17 : cs41, grp, 8,
                                         infinity);

    const auto ag = construct_ag24_gdd(); // groups are {4g..4g+3} by construction
    for (const auto& blk : gdd.blocks) {
        auto sorted = blk;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& inner : ag.blocks) {
            // AG point 4g + y maps to (sorted[g], y), i.e. composite point
            // 4*sorted[g] + y; doubling then yields labels 8x + 2j + i.
            std::array<Vertex, 4> pts{};
            for (int i = 0; i < 4; ++i)
                pts[i] = 4 * sorted[inner[i] / 4] + inner[i] % 4;
            std::sort(pts.begin(), pts.end());
            for (const auto& c : decompose_k2222(pts)) sys.cycles.push_back(c);
        }
    }
    detail_compose::certify(sys, opt, "quadruple_case4");
    return sys;
}

} // namespace fourcs
