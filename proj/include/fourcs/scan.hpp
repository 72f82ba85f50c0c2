#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"

namespace fourcs {

enum class PairClass { DoubleDiamond, SixTwoOther, SevenTwo, EightTwo };

inline const char* pair_class_name(PairClass c) {
    switch (c) {
        case PairClass::DoubleDiamond: return "DoubleDiamond";
        case PairClass::SixTwoOther: return "SixTwoOther";
        case PairClass::SevenTwo: return "SevenTwo";
        case PairClass::EightTwo: return "EightTwo";
    }
    return "?";
}

struct ScanOptions {
    int max_r = 6;                 // refuse dense enumeration beyond this
    std::size_t witness_cap = 100; // stored samples per class; counts stay exact
    unsigned threads = 0;          // 0 = hardware concurrency
};

using DenseWitness = std::vector<FourCycle>; // sorted canonical cycles

struct DenseScan {
    std::map<int, std::uint64_t> count_by_j;               // j -> #(j+3, j)-configs
    std::map<int, std::vector<DenseWitness>> witnesses_by_j; // capped, sorted
};

struct ScanReport {
    int r_requested = 0;
    int r_max = 0;      // largest r' <= r_requested with no (j+3,j) for 2 <= j <= r'
    bool strict = false; // no double-diamond AND r_max >= r_requested
    bool d_avoiding = false;
    std::uint64_t double_diamonds = 0;
    std::uint64_t jointed_diamonds = 0;
    std::uint64_t six_three_a = 0, six_three_b = 0; // split of the (6,3) count
    bool jd_fast_path = false; // (7,4) absence certified via jointed-diamond absence
    DenseScan dense;
    std::vector<std::pair<FourCycle, FourCycle>> dd_witnesses;
    std::vector<std::array<FourCycle, 3>> jd_witnesses;
};

struct PairCensus {
    std::uint64_t double_diamond = 0;
    std::uint64_t six_two_other = 0;
    std::uint64_t seven_two = 0;
    std::uint64_t eight_two = 0;
};

namespace detail_scan {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct VertexIndex {
    std::vector<std::vector<std::int32_t>> cycles_at; // vertex -> cycle ids
    explicit VertexIndex(const CyclePacking& p) : cycles_at(p.order) {
        for (std::size_t i = 0; i < p.cycles.size(); ++i)
            for (Vertex x : p.cycles[i].v) cycles_at[x].push_back(std::int32_t(i));
    }
};

struct DiagonalIndex {
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> at;
    explicit DiagonalIndex(const CyclePacking& p) {
        at.reserve(p.cycles.size() * 2);
        for (std::size_t i = 0; i < p.cycles.size(); ++i)
            for (const auto& d : p.cycles[i].diagonals())
                at[detail::pair_key(d.first, d.second)].push_back(std::int32_t(i));
    }
    const std::vector<std::int32_t>* find(const Edge& e) const {
        auto it = at.find(detail::pair_key(e.first, e.second));
        return it == at.end() ? nullptr : &it->second;
    }
};

inline int shared_vertices(const FourCycle& a, const FourCycle& b) {
    int n = 0;
    for (Vertex x : a.v) n += b.contains(x);
    return n;
}

inline bool has_diagonal(const FourCycle& c, const Edge& e) {
    const auto d = c.diagonals();
    return d[0] == e || d[1] == e;
}

} // namespace detail_scan

/// All pairs of distinct cycles sharing a diagonal. In an edge-disjoint
/// packing such a pair automatically spans six vertices: the double-diamond.
inline std::vector<std::pair<FourCycle, FourCycle>> find_double_diamonds(const CyclePacking& p) {
    detail_scan::DiagonalIndex diag(p);
    std::set<std::pair<FourCycle, FourCycle>> out;
    for (const auto& [key, ids] : diag.at) {
        (void)key;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                FourCycle a = p.cycles[ids[i]], b = p.cycles[ids[j]];
                if (b < a) std::swap(a, b);
                out.insert({a, b});
            }
    }
    return {out.begin(), out.end()};
}

/// All jointed-diamonds: a joint cycle whose two opposite edges are diagonals
/// of two further cycles meeting in exactly one vertex outside the joint,
/// seven vertices in total. Candidates come from the diagonal index.
inline std::vector<std::array<FourCycle, 3>> find_jointed_diamonds(const CyclePacking& p) {
    detail_scan::DiagonalIndex diag(p);
    std::set<std::array<FourCycle, 3>> out;
    for (std::size_t j = 0; j < p.cycles.size(); ++j) {
        const FourCycle& joint = p.cycles[j];
        const auto e = joint.edges();
        const std::array<std::pair<Edge, Edge>, 2> opposite{{{e[0], e[2]}, {e[1], e[3]}}};
        for (const auto& [e1, e2] : opposite) {
            const auto* d1 = diag.find(e1);
            const auto* d2 = diag.find(e2);
            if (!d1 || !d2) continue;
            for (std::int32_t i1 : *d1) {
                if (std::size_t(i1) == j) continue;
                const FourCycle& c1 = p.cycles[i1];
                if (detail_scan::shared_vertices(c1, joint) != 2) continue;
                for (std::int32_t i2 : *d2) {
                    if (std::size_t(i2) == j || i2 == i1) continue;
                    const FourCycle& c2 = p.cycles[i2];
                    if (detail_scan::shared_vertices(c2, joint) != 2) continue;
                    if (detail_scan::shared_vertices(c1, c2) != 1) continue;
                    std::array<FourCycle, 3> w{joint, c1, c2};
                    std::sort(w.begin(), w.end());
                    out.insert(w);
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

/// Classifies an edge-disjoint pair by its shared-vertex pattern.
inline PairClass classify_pair(const FourCycle& a, const FourCycle& b) {
    if (a == b) raise(Errc::not_edge_disjoint, "identical cycles");
    {
        std::set<Edge> ea(a.edges().begin(), a.edges().end());
        for (const auto& e : b.edges())
            if (ea.count(e)) raise(Errc::not_edge_disjoint, "cycles share an edge");
    }
    const int s = detail_scan::shared_vertices(a, b);
    if (s == 0) return PairClass::EightTwo;
    if (s == 1) return PairClass::SevenTwo;
    // s == 2: shared pair is a diagonal of both (double-diamond) or an edge of
    // one and a diagonal of the other. s >= 3 cannot happen edge-disjointly.
    std::array<Vertex, 2> sh{};
    int n = 0;
    for (Vertex x : a.v)
        if (b.contains(x)) sh[n++] = x;
    const Edge se = make_edge(sh[0], sh[1]);
    if (detail_scan::has_diagonal(a, se) && detail_scan::has_diagonal(b, se))
        return PairClass::DoubleDiamond;
    return PairClass::SixTwoOther;
}

/// Exact pair-class counts over all unordered cycle pairs. Vertex-sharing
/// pairs are enumerated through the vertex index; disjoint pairs by
/// complement.
inline PairCensus census_pairs(const CyclePacking& p, const ScanOptions& opt = {}) {
    const std::size_t b = p.cycles.size();
    detail_scan::VertexIndex vidx(p);
    const unsigned T = detail_scan::resolve_threads(opt.threads);
    std::vector<PairCensus> parts(T);
    std::vector<std::uint64_t> sharing(T, 0);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < b; i += T) {
            const FourCycle& a = p.cycles[i];
            // Collect distinct partners j > i sharing >= 1 vertex.
            std::vector<std::int32_t> partners;
            for (Vertex x : a.v)
                for (std::int32_t j : vidx.cycles_at[x])
                    if (std::size_t(j) > i) partners.push_back(j);
            std::sort(partners.begin(), partners.end());
            partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
            for (std::int32_t j : partners) {
                ++sharing[w];
                switch (classify_pair(a, p.cycles[j])) {
                    case PairClass::DoubleDiamond: ++parts[w].double_diamond; break;
                    case PairClass::SixTwoOther: ++parts[w].six_two_other; break;
                    case PairClass::SevenTwo: ++parts[w].seven_two; break;
                    case PairClass::EightTwo: break; // unreachable: partners share a vertex
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < T; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    PairCensus total;
    std::uint64_t shared_pairs = 0;
    for (unsigned w = 0; w < T; ++w) {
        total.double_diamond += parts[w].double_diamond;
        total.six_two_other += parts[w].six_two_other;
        total.seven_two += parts[w].seven_two;
        shared_pairs += sharing[w];
    }
    total.eight_two = b * (b - 1) / 2 - shared_pairs;
    return total;
}

/// Finds every (j+3, j)-configuration for 2 <= j <= r by ESU-style connected
/// enumeration over the cycle-intersection graph, pruning any partial set
/// spanning more than r+3 vertices. A (j+3,j)-configuration cannot split into
/// vertex-disjoint parts for j <= 8 (the parts would span too many vertices),
/// so connected enumeration is exhaustive.
inline DenseScan find_dense_configs(const CyclePacking& p, int r, const ScanOptions& opt = {}) {
    if (r < 2) raise(Errc::bad_argument, "r must be >= 2");
    if (r > opt.max_r || r > 8)
        raise(Errc::unsupported, "dense scan limited to r <= " + std::to_string(opt.max_r));
    const std::size_t b = p.cycles.size();
    detail_scan::VertexIndex vidx(p);
    const int max_span = r + 3;
    const unsigned T = detail_scan::resolve_threads(opt.threads);

    struct WorkerOut {
        std::map<int, std::uint64_t> counts;
        std::map<int, std::vector<DenseWitness>> wits;
    };
    std::vector<WorkerOut> outs(T);

    auto work = [&](unsigned w) {
        WorkerOut& out = outs[w];
        // Epoch-stamped membership marks, reused across roots.
        std::vector<std::uint32_t> cyc_mark(b, 0);   // in S or already a neighbor of S
        std::vector<std::uint32_t> vert_mark(p.order, 0);
        std::uint32_t epoch = 0;
        std::vector<std::int32_t> set_ids;
        set_ids.reserve(r);

        struct Frame {}; // recursion implemented directly below

        // Recursive extension; S is implicit in set_ids / marks.
        auto extend = [&](auto&& self, std::int32_t root, std::vector<std::int32_t>& ext,
                          int span) -> void {
            const int j = int(set_ids.size());
            if (j >= 2 && span == j + 3) {
                ++out.counts[j];
                auto& ws = out.wits[j];
                if (ws.size() < opt.witness_cap) {
                    DenseWitness wit;
                    for (auto id : set_ids) wit.push_back(p.cycles[id]);
                    std::sort(wit.begin(), wit.end());
                    ws.push_back(std::move(wit));
                }
            }
            if (j == r) return;
            while (!ext.empty()) {
                const std::int32_t cand = ext.back();
                ext.pop_back();
                // New span if cand joins S.
                int nspan = span;
                for (Vertex x : p.cycles[cand].v)
                    if (vert_mark[x] != epoch) ++nspan;
                // Exclusive new neighbors of cand (not in S nor N(S)) with id > root.
                std::vector<std::int32_t> next = ext;
                std::vector<std::int32_t> marked_now;
                for (Vertex x : p.cycles[cand].v)
                    for (std::int32_t u : vidx.cycles_at[x])
                        if (cyc_mark[u] != epoch) {
                            cyc_mark[u] = epoch;
                            marked_now.push_back(u);
                            if (u > root) next.push_back(u);
                        }
                if (nspan <= max_span) {
                    std::vector<Vertex> newly;
                    for (Vertex x : p.cycles[cand].v)
                        if (vert_mark[x] != epoch) {
                            vert_mark[x] = epoch;
                            newly.push_back(x);
                        }
                    set_ids.push_back(cand);
                    self(self, root, next, nspan);
                    set_ids.pop_back();
                    for (Vertex x : newly) vert_mark[x] = epoch - 1;
                }
                // cand stays excluded (marked) for the remaining siblings: every
                // connected superset containing it is enumerated in its branch.
                for (std::int32_t u : marked_now)
                    if (u != cand) cyc_mark[u] = epoch - 1;
            }
        };

        for (std::size_t root = w; root < b; root += T) {
            ++epoch;
            if (epoch == 0) { // wrapped; re-zero
                std::fill(cyc_mark.begin(), cyc_mark.end(), 0);
                std::fill(vert_mark.begin(), vert_mark.end(), 0);
                epoch = 1;
            }
            const std::int32_t rt = std::int32_t(root);
            cyc_mark[rt] = epoch;
            std::vector<std::int32_t> ext;
            for (Vertex x : p.cycles[rt].v) {
                vert_mark[x] = epoch;
                for (std::int32_t u : vidx.cycles_at[x])
                    if (cyc_mark[u] != epoch) {
                        cyc_mark[u] = epoch;
                        if (u > rt) ext.push_back(u);
                    }
            }
            set_ids.assign(1, rt);
            extend(extend, rt, ext, 4);
            set_ids.clear();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < T; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();

    DenseScan result;
    for (int j = 2; j <= r; ++j) result.count_by_j[j] = 0;
    for (auto& o : outs) {
        for (auto& [j, c] : o.counts) result.count_by_j[j] += c;
        for (auto& [j, ws] : o.wits) {
            auto& dst = result.witnesses_by_j[j];
            dst.insert(dst.end(), ws.begin(), ws.end());
        }
    }
    for (auto& [j, ws] : result.witnesses_by_j) {
        (void)j;
        std::sort(ws.begin(), ws.end());
        if (ws.size() > opt.witness_cap) ws.resize(opt.witness_cap);
    }
    return result;
}

/// True iff some j-subset of the configuration's cycles spans exactly j+3
/// vertices. Precondition: c is a (j+3, j+d)-configuration with d >= 1.
inline bool contains_dense_sub(const Configuration& c, int j) {
    const std::size_t l = c.cycle_count();
    if (j < 1 || l <= std::size_t(j))
        raise(Errc::precondition_violated, "need a (j+3, j+d)-configuration with d >= 1");
    if (c.vertex_count() != std::size_t(j) + 3)
        raise(Errc::precondition_violated, "configuration does not span j+3 vertices");
    if (!c.edge_disjoint()) raise(Errc::precondition_violated, "cycles not edge-disjoint");
    std::vector<int> pick(l, 0);
    std::fill(pick.end() - j, pick.end(), 1);
    do {
        std::set<Vertex> vs;
        for (std::size_t i = 0; i < l; ++i)
            if (pick[i]) vs.insert(c.cycles[i].v.begin(), c.cycles[i].v.end());
        if (vs.size() == std::size_t(j) + 3) return true;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
}

namespace detail_scan {

/// Distinguishes the two (6,3) types by the number of diagonal-sharing pairs
/// among the three cycles: type (a,b,c,d),(a,e,c,f),(b,e,f,d) has one, type
/// (a,b,c,d),(a,e,c,f),(b,e,d,f) has three.
inline bool six_three_is_type_b(const DenseWitness& w) {
    int dd = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto di = w[i].diagonals();
            for (const auto& e : w[j].diagonals())
                if (e == di[0] || e == di[1]) ++dd;
        }
    return dd == 3;
}

} // namespace detail_scan

/// Full certification scan. For r = 4 the (7,4) level is skipped when no
/// jointed-diamond exists, since every (7,4)-configuration contains one.
inline ScanReport is_strictly_r_sparse(const CyclePacking& p, int r, const ScanOptions& opt = {}) {
    if (auto rep = validate_packing(p); !rep)
        raise(Errc::validation_failed, "not a packing: " + rep.detail);
    if (r < 2) raise(Errc::bad_argument, "r must be >= 2");
    ScanReport rep;
    rep.r_requested = r;

    auto dd = find_double_diamonds(p);
    rep.double_diamonds = dd.size();
    rep.d_avoiding = dd.empty();
    if (dd.size() > opt.witness_cap) dd.resize(opt.witness_cap);
    rep.dd_witnesses = std::move(dd);

    auto jd = find_jointed_diamonds(p);
    rep.jointed_diamonds = jd.size();
    if (jd.size() > opt.witness_cap) jd.resize(opt.witness_cap);
    rep.jd_witnesses = std::move(jd);

    int scan_r = r;
    if (r == 4 && rep.jointed_diamonds == 0) {
        scan_r = 3;
        rep.jd_fast_path = true;
    }
    rep.dense = find_dense_configs(p, scan_r, opt);
    if (rep.jd_fast_path) rep.dense.count_by_j[4] = 0;
    for (int j = 2; j <= r; ++j)
        if (!rep.dense.count_by_j.count(j)) rep.dense.count_by_j[j] = 0;

    if (auto it = rep.dense.witnesses_by_j.find(3); it != rep.dense.witnesses_by_j.end()) {
        for (const auto& w : it->second)
            (detail_scan::six_three_is_type_b(w) ? rep.six_three_b : rep.six_three_a)++;
    }

    rep.r_max = r;
    for (int j = 2; j <= r; ++j)
        if (rep.dense.count_by_j[j] != 0) {
            rep.r_max = j - 1;
            break;
        }
    rep.strict = rep.d_avoiding && rep.r_max >= r;
    return rep;
}

} // namespace fourcs
