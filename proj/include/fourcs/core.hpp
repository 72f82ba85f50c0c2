#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fourcs/detail.hpp"
#include "fourcs/errors.hpp"

namespace fourcs {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>; // always stored (min, max)

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// A 4-cycle in canonical form: the lexicographically least of the 8 dihedral
/// orderings of its vertices. Two equal cycles always compare equal.
struct FourCycle {
    std::array<Vertex, 4> v{};

    auto operator<=>(const FourCycle&) const = default;

    /// The four cycle edges {v0,v1},{v1,v2},{v2,v3},{v3,v0}, each normalized.
    std::array<Edge, 4> edges() const {
        return {make_edge(v[0], v[1]), make_edge(v[1], v[2]), make_edge(v[2], v[3]),
                make_edge(v[3], v[0])};
    }

    /// The two vertex pairs at distance two, {v0,v2} and {v1,v3}.
    std::array<Edge, 2> diagonals() const {
        return {make_edge(v[0], v[2]), make_edge(v[1], v[3])};
    }

    bool contains(Vertex x) const {
        return v[0] == x || v[1] == x || v[2] == x || v[3] == x;
    }

    Vertex max_vertex() const { return std::max(std::max(v[0], v[1]), std::max(v[2], v[3])); }
};

/// Least dihedral representative of the quadruple (a,b,c,d).
/// Idempotent and constant on each dihedral orbit.
inline FourCycle canonicalize(Vertex a, Vertex b, Vertex c, Vertex d) {
    if (a == b || a == c || a == d || b == c || b == d || c == d)
        raise(Errc::duplicate_vertex, "4-cycle vertices must be distinct");
    const std::array<Vertex, 4> in{a, b, c, d};
    std::array<Vertex, 4> best{a, b, c, d};
    for (int rot = 0; rot < 4; ++rot) {
        std::array<Vertex, 4> fwd, rev;
        for (int i = 0; i < 4; ++i) {
            fwd[i] = in[(rot + i) & 3];
            rev[i] = in[(rot + 4 - i) & 3];
        }
        if (fwd < best) best = fwd;
        if (rev < best) best = rev;
    }
    return FourCycle{best};
}

inline FourCycle canonicalize(const std::array<Vertex, 4>& q) {
    return canonicalize(q[0], q[1], q[2], q[3]);
}

/// An edge-disjoint set of 4-cycles on vertices [0, order). A 4-cycle system
/// is a packing whose edges partition K_v; validate_system checks that.
struct CyclePacking {
    Vertex order = 0;
    std::vector<FourCycle> cycles;

    /// Sorts cycles into canonical order (used before serialization/comparison).
    void normalize() { std::sort(cycles.begin(), cycles.end()); }

    bool contains(const FourCycle& c) const {
        return std::find(cycles.begin(), cycles.end(), c) != cycles.end();
    }
};

using FourCycleSystem = CyclePacking;

/// A set of pairwise edge-disjoint cycles considered in isolation; a
/// (k,l)-configuration has l cycles spanning exactly k vertices.
struct Configuration {
    std::vector<FourCycle> cycles;

    std::size_t cycle_count() const { return cycles.size(); }

    std::size_t vertex_count() const {
        std::set<Vertex> vs;
        for (const auto& c : cycles) vs.insert(c.v.begin(), c.v.end());
        return vs.size();
    }

    bool edge_disjoint() const {
        std::set<Edge> seen;
        for (const auto& c : cycles)
            for (const auto& e : c.edges())
                if (!seen.insert(e).second) return false;
        return true;
    }
};

struct ValidationReport {
    bool ok = true;
    std::string detail;
    std::optional<Edge> witness_pair;  // offending or uncovered vertex pair
    std::vector<FourCycle> witness_cycles;

    explicit operator bool() const { return ok; }

    static ValidationReport pass() { return {}; }

    static ValidationReport fail(std::string d, std::optional<Edge> e = std::nullopt,
                                 std::vector<FourCycle> cs = {}) {
        return ValidationReport{false, std::move(d), e, std::move(cs)};
    }
};

/// Checks edge-disjointness and label range; reports the first offense.
inline ValidationReport validate_packing(const CyclePacking& p) {
    std::unordered_map<std::uint64_t, std::size_t> edge_owner;
    edge_owner.reserve(p.cycles.size() * 4);
    for (std::size_t i = 0; i < p.cycles.size(); ++i) {
        const auto& c = p.cycles[i];
        if (c.max_vertex() >= p.order)
            return ValidationReport::fail("vertex label out of range", std::nullopt, {c});
        for (const auto& e : c.edges()) {
            auto [it, fresh] = edge_owner.emplace(detail::pair_key(e.first, e.second), i);
            if (!fresh) {
                return ValidationReport::fail(
                    "duplicate edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                        "}",
                    e, {p.cycles[it->second], c});
            }
        }
    }
    return ValidationReport::pass();
}

/// Checks the full 4CS(v) contract: v = 1 (mod 8), v(v-1)/8 cycles,
/// edge-disjoint, and every vertex pair covered.
inline ValidationReport validate_system(const CyclePacking& s) {
    const std::uint64_t v = s.order;
    if (v % 8 != 1)
        return ValidationReport::fail("order " + std::to_string(v) + " is not 1 (mod 8)");
    if (auto rep = validate_packing(s); !rep) return rep;
    const std::uint64_t want = v * (v - 1) / 8;
    if (s.cycles.size() != want) {
        // Count matters: with edge-disjointness, v(v-1)/8 cycles force a partition.
        std::vector<bool> covered(v * (v - 1) / 2, false);
        for (const auto& c : s.cycles)
            for (const auto& e : c.edges()) covered[detail::tri_index(v, e.first, e.second)] = true;
        for (Vertex i = 0; i < v; ++i)
            for (Vertex j = i + 1; j < v; ++j)
                if (!covered[detail::tri_index(v, i, j)])
                    return ValidationReport::fail(
                        "uncovered pair {" + std::to_string(i) + "," + std::to_string(j) + "}; " +
                            std::to_string(s.cycles.size()) + " cycles, expected " +
                            std::to_string(want),
                        Edge{i, j});
        return ValidationReport::fail("cycle count " + std::to_string(s.cycles.size()) +
                                      " != " + std::to_string(want));
    }
    return ValidationReport::pass();
}

} // namespace fourcs
