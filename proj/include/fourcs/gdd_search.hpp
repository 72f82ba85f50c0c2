#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fourcs/detail.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/gdd.hpp"

namespace fourcs {

/// Searches for a 4-GDD of the given type by randomized depth-first exact
/// cover (dancing links): the universe is the cross pairs, candidates are the
/// group-transverse 4-subsets, branching always on a most-constrained pair.
/// Deterministic for a fixed (type, seed, budget); the budget counts row
/// choices tried.
///
/// Groups are laid out in type order: ascending group size, consecutive point
/// labels.
inline GroupDivisibleDesign search_gdd(const GddType& type, std::uint64_t seed,
                                       std::uint64_t budget = 2'000'000) {
    const std::uint32_t n = gdd_type_points(type);
    const std::uint64_t cross = gdd_cross_pairs(type);
    if (cross % 6 != 0)
        raise(Errc::infeasible,
              "cross pair count " + std::to_string(cross) + " not divisible by 6");

    GroupDivisibleDesign out;
    out.n = n;
    std::vector<std::int32_t> group_of(n);
    {
        std::uint32_t next = 0;
        std::int32_t gi = 0;
        for (const auto& [size, count] : type)
            for (std::uint32_t c = 0; c < count; ++c, ++gi) {
                std::vector<std::uint32_t> grp(size);
                std::iota(grp.begin(), grp.end(), next);
                for (std::uint32_t x : grp) group_of[x] = gi;
                next += size;
                out.groups.push_back(std::move(grp));
            }
    }
    // Per-point divisibility: a point in group G lies in (n - |G|)/3 blocks.
    for (const auto& grp : out.groups)
        if ((n - grp.size()) % 3 != 0)
            raise(Errc::infeasible, "point degree (n - |G|) not divisible by 3");
    if (cross == 0) return out; // single group: trivially valid, no blocks

    // Columns: cross pairs.
    std::vector<std::int32_t> col_of_pair(std::uint64_t(n) * (n - 1) / 2, -1);
    std::int32_t num_cols = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (group_of[i] != group_of[j])
                col_of_pair[detail::tri_index(n, i, j)] = num_cols++;

    // Rows: transverse 4-subsets, in seed-shuffled order.
    std::vector<std::array<std::uint32_t, 4>> rows;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (group_of[a] == group_of[b]) continue;
            for (std::uint32_t c = b + 1; c < n; ++c) {
                if (group_of[c] == group_of[a] || group_of[c] == group_of[b]) continue;
                for (std::uint32_t d = c + 1; d < n; ++d) {
                    if (group_of[d] == group_of[a] || group_of[d] == group_of[b] ||
                        group_of[d] == group_of[c])
                        continue;
                    rows.push_back({a, b, c, d});
                }
            }
        }
    std::mt19937_64 rng(seed);
    for (std::size_t i = rows.size(); i > 1; --i)
        std::swap(rows[i - 1], rows[detail::uniform_below(rng, i)]);

    // Dancing links over a node pool. Node 0..num_cols-1 are column headers.
    struct Node {
        std::int32_t l, r, u, d;
        std::int32_t col;  // column header index, or -1 for the root
        std::int32_t row;  // row id for body nodes
    };
    std::vector<Node> nodes;
    nodes.reserve(std::size_t(num_cols) + 1 + rows.size() * 6);
    const std::int32_t root = num_cols;
    for (std::int32_t c = 0; c <= num_cols; ++c)
        nodes.push_back({c - 1, c + 1, c, c, c, -1});
    nodes[0].l = root;
    nodes[root].r = 0;
    nodes[root].col = -1;
    std::vector<std::int32_t> col_size(num_cols, 0);

    auto add_row = [&](std::int32_t row_id, const std::array<std::int32_t, 6>& cols) {
        const std::int32_t first = std::int32_t(nodes.size());
        for (int i = 0; i < 6; ++i) {
            const std::int32_t c = cols[i];
            const std::int32_t id = std::int32_t(nodes.size());
            Node nd{};
            nd.col = c;
            nd.row = row_id;
            nd.u = nodes[c].u;
            nd.d = c;
            nodes[nodes[c].u].d = id;
            nodes[c].u = id;
            nd.l = i == 0 ? id : id - 1;
            nd.r = i == 0 ? id : first;
            nodes.push_back(nd);
            if (i > 0) {
                nodes[id - 1].r = id;
                nodes[first].l = id;
            }
            ++col_size[c];
        }
    };
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const auto& q = rows[ri];
        std::array<std::int32_t, 6> cols{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                cols[k++] = col_of_pair[detail::tri_index(n, q[i], q[j])];
        add_row(std::int32_t(ri), cols);
    }

    auto cover = [&](std::int32_t c) {
        nodes[nodes[c].r].l = nodes[c].l;
        nodes[nodes[c].l].r = nodes[c].r;
        for (std::int32_t i = nodes[c].d; i != c; i = nodes[i].d)
            for (std::int32_t j = nodes[i].r; j != i; j = nodes[j].r) {
                nodes[nodes[j].d].u = nodes[j].u;
                nodes[nodes[j].u].d = nodes[j].d;
                --col_size[nodes[j].col];
            }
    };
    auto uncover = [&](std::int32_t c) {
        for (std::int32_t i = nodes[c].u; i != c; i = nodes[i].u)
            for (std::int32_t j = nodes[i].l; j != i; j = nodes[j].l) {
                ++col_size[nodes[j].col];
                nodes[nodes[j].d].u = j;
                nodes[nodes[j].u].d = j;
            }
        nodes[nodes[c].r].l = c;
        nodes[nodes[c].l].r = c;
    };

    std::vector<std::int32_t> solution;
    std::uint64_t spent = 0;
    bool exhausted = false;

    auto dfs = [&](auto&& self) -> bool {
        if (nodes[root].r == root) return true;
        // Most-constrained column.
        std::int32_t best = -1, best_size = INT32_MAX;
        for (std::int32_t c = nodes[root].r; c != root; c = nodes[c].r)
            if (col_size[c] < best_size) {
                best_size = col_size[c];
                best = c;
                if (best_size <= 1) break;
            }
        if (best_size == 0) return false;
        cover(best);
        for (std::int32_t i = nodes[best].d; i != best; i = nodes[i].d) {
            if (++spent > budget) {
                exhausted = true;
                break;
            }
            solution.push_back(nodes[i].row);
            for (std::int32_t j = nodes[i].r; j != i; j = nodes[j].r) cover(nodes[j].col);
            if (self(self)) return true;
            for (std::int32_t j = nodes[i].l; j != i; j = nodes[j].l) uncover(nodes[j].col);
            solution.pop_back();
            if (exhausted) break;
        }
        uncover(best);
        return false;
    };

    if (!dfs(dfs)) {
        if (exhausted)
            raise(Errc::budget_exhausted, "no 4-GDD of type " + format_gdd_type(type) +
                                              " within " + std::to_string(budget) + " nodes");
        raise(Errc::infeasible,
              "exact cover for type " + format_gdd_type(type) + " has no solution");
    }
    for (std::int32_t r : solution) out.blocks.push_back(rows[r]);
    out.normalize();
    if (auto rep = validate_gdd(out); !rep)
        raise(Errc::validation_failed, "search produced invalid GDD: " + rep.detail);
    return out;
}

inline GroupDivisibleDesign search_gdd(const std::string& type, std::uint64_t seed,
                                       std::uint64_t budget = 2'000'000) {
    return search_gdd(parse_gdd_type(type), seed, budget);
}

} // namespace fourcs
