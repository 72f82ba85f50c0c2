// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Time limits are enforced where stated.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fourcs/fourcs.hpp"
#include "testutil.hpp"

using namespace fourcs;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int id;
    std::string label;
    double limit_seconds; // 0 = no limit
    std::function<void(std::string&)> body;
};

void run(const Criterion& c) {
    std::string detail;
    bool ok = true;
    const auto t0 = Clock::now();
    try {
        c.body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (ok && c.limit_seconds > 0 && secs > c.limit_seconds) {
        ok = false;
        detail = "time limit exceeded (" + std::to_string(c.limit_seconds) + "s)";
    }
    if (!ok) ++failures;
    std::printf("%s  %2d  %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.label.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void expect_strict(const CyclePacking& sys, int r = 4) {
    const auto vrep = validate_system(sys);
    expect(vrep.ok, "validate_system failed: " + vrep.detail);
    const auto rep = is_strictly_r_sparse(sys, r);
    expect(rep.double_diamonds == 0, "double-diamonds found");
    expect(rep.jointed_diamonds == 0, "jointed-diamonds found");
    for (int j = 2; j <= r; ++j)
        expect(rep.dense.count_by_j.at(j) == 0,
               "(" + std::to_string(j + 3) + "," + std::to_string(j) + ")-configurations found");
    expect(rep.strict, "not strict");
}

std::string fixtures_dir() {
    if (const char* env = std::getenv("FOURCS_FIXTURES")) return env;
    return FOURCS_DEFAULT_FIXTURES;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({1, "cyclic 4CS(9): 9 cycles, strictly 4-sparse", 1.0, [](std::string&) {
                            const auto sys = construct_cyclic_4cs9();
                            expect(sys.cycles.size() == 9, "expected 9 cycles");
                            expect_strict(sys);
                        }});

    for (const std::uint64_t q : {17ull, 25ull, 41ull, 49ull, 73ull, 89ull, 97ull, 113ull})
        criteria.push_back(
            {2, "character 4CS(" + std::to_string(q) + "): q(q-1)/8 cycles, strictly 4-sparse",
             10.0, [q](std::string&) {
                 const auto sys = construct_character_4cs(q);
                 expect(sys.cycles.size() == q * (q - 1) / 8, "wrong cycle count");
                 expect_strict(sys);
             }});

    criteria.push_back(
        {3, "K_{2,2,2,2} development: all 24 role assignments", 0, [](std::string&) {
             std::array<Vertex, 4> pts{0, 1, 2, 3};
             std::sort(pts.begin(), pts.end());
             // Brute-force oracle for the cross edges.
             std::set<Edge> expect_edges;
             for (int i = 0; i < 4; ++i)
                 for (int j = i + 1; j < 4; ++j)
                     for (Vertex a = 0; a < 2; ++a)
                         for (Vertex b = 0; b < 2; ++b)
                             expect_edges.insert(make_edge(2 * pts[i] + a, 2 * pts[j] + b));
             int assignments = 0;
             do {
                 ++assignments;
                 const auto cycles = decompose_k2222(pts);
                 std::set<Edge> got;
                 for (const auto& c : cycles)
                     for (const auto& e : c.edges())
                         expect(got.insert(e).second, "repeated edge");
                 expect(got == expect_edges, "does not cover exactly the 24 cross edges");
                 std::set<Edge> diags;
                 for (const auto& c : cycles)
                     for (const auto& d : c.diagonals())
                         expect(diags.insert(d).second, "shared diagonal");
             } while (std::next_permutation(pts.begin(), pts.end()));
             expect(assignments == 24, "expected 24 role assignments");
         }});

    criteria.push_back({4, "composition case 2: 4CS(33) from AG(2,4)", 30.0, [](std::string& d) {
                            GddProvider provider;
                            const auto r = compose_for_order(33, provider);
                            expect(r.case_id == 2, "wrong case");
                            expect_strict(r.system);
                            d = std::to_string(r.system.cycles.size()) + " cycles";
                        }});
    criteria.push_back({4, "composition case 3: 4CS(65) from TD(4,8)", 30.0, [](std::string& d) {
                            GddProvider provider;
                            const auto r = compose_for_order(65, provider);
                            expect(r.case_id == 3, "wrong case");
                            expect_strict(r.system);
                            d = std::to_string(r.system.cycles.size()) + " cycles";
                        }});
    criteria.push_back(
        {4, "composition case 1: 4CS(97) from TD(4,12) (MacNeish)", 30.0, [](std::string& d) {
             GddProvider provider;
             const auto r = compose_for_order(97, provider);
             expect(r.case_id == 1, "wrong case");
             expect_strict(r.system);
             d = std::to_string(r.system.cycles.size()) + " cycles";
         }});
    criteria.push_back(
        {4, "composition case 4: 4CS(185) from 2^9,5^1", 600.0, [](std::string& d) {
             GddProvider provider;
             const auto r = compose_for_order(185, provider);
             expect(r.case_id == 4, "wrong case");
             expect(r.system.cycles.size() == 4255, "expected 4255 cycles");
             expect_strict(r.system);
             d = "4255 cycles";
         }});

    criteria.push_back({5, "GDD correctness and fixture round-trip", 0, [](std::string& d) {
                            const auto ag = construct_ag24_gdd();
                            expect(ag.n == 16 && ag.groups.size() == 4 && ag.blocks.size() == 16,
                                   "AG(2,4) shape");
                            expect(validate_gdd(ag).ok, "AG(2,4) invalid");

                            const auto searched = search_gdd(parse_gdd_type("2^9,5^1"), 1);
                            expect(searched.blocks.size() == 39, "searched 2^9,5^1 block count");
                            expect(validate_gdd(searched).ok, "searched 2^9,5^1 invalid");

                            const auto path = std::filesystem::path(fixtures_dir()) /
                                              gdd_fixture_name(parse_gdd_type("2^9,5^1"));
                            std::ifstream f(path);
                            expect(bool(f), "fixture missing: " + path.string());
                            std::stringstream file_bytes;
                            file_bytes << f.rdbuf();
                            const auto g = load_gdd_file(path.string());
                            std::ostringstream stored;
                            store_gdd(g, stored);
                            expect(stored.str() == file_bytes.str(),
                                   "fixture round-trip not byte-identical");
                            d = "AG(2,4), search, fixture";
                        }});

    criteria.push_back(
        {6, "scanner oracle equivalence on 200 random packings", 0, [](std::string& d) {
             int packings = 0;
             std::uint64_t dd_total = 0, jd_total = 0, dense_total = 0;
             for (std::uint64_t seed = 1; packings < 200; ++seed) {
                 const Vertex v = 8 + seed % 8;
                 const auto p = testutil::random_packing(v, 25, seed * 1315423911ull);
                 if (p.cycles.size() < 2) continue;
                 ++packings;
                 const auto dd = find_double_diamonds(p);
                 expect(dd == testutil::naive_double_diamonds(p), "double-diamond mismatch");
                 const auto jd = find_jointed_diamonds(p);
                 expect(jd == testutil::naive_jointed_diamonds(p), "jointed-diamond mismatch");
                 dd_total += dd.size();
                 jd_total += jd.size();
                 ScanOptions opt;
                 opt.witness_cap = 1 << 20;
                 const auto dense = find_dense_configs(p, 4, opt);
                 for (int j = 2; j <= 4; ++j) {
                     const auto naive = testutil::naive_dense(p, j);
                     expect(dense.count_by_j.at(j) == naive.size(), "dense count mismatch");
                     auto wit = dense.witnesses_by_j.count(j)
                                    ? dense.witnesses_by_j.at(j)
                                    : std::vector<DenseWitness>{};
                     std::sort(wit.begin(), wit.end());
                     expect(wit == naive, "dense witness mismatch");
                     dense_total += naive.size();
                 }
             }
             d = "dd=" + std::to_string(dd_total) + " jd=" + std::to_string(jd_total) +
                 " dense=" + std::to_string(dense_total);
         }});

    criteria.push_back(
        {7, "dense-substructure containment on 100 random packings", 0, [](std::string& d) {
             std::uint64_t checked = 0;
             for (std::uint64_t seed = 0; seed < 100; ++seed) {
                 const Vertex v = 8 + seed % 5;
                 const auto p = testutil::random_packing(v, SIZE_MAX, seed * 2654435761ull + 1);
                 const std::size_t b = p.cycles.size();
                 expect(b < 60, "unexpectedly large packing");
                 for (std::size_t mask = 1; mask < (std::size_t(1) << b); ++mask) {
                     const int l = __builtin_popcountll(mask);
                     if (l < 2 || l > 6) continue;
                     Configuration c;
                     for (std::size_t i = 0; i < b; ++i)
                         if (mask & (std::size_t(1) << i)) c.cycles.push_back(p.cycles[i]);
                     const int j = int(c.vertex_count()) - 3;
                     if (j < 1 || j >= l) continue;
                     ++checked;
                     expect(contains_dense_sub(c, j),
                            "counterexample: a (" + std::to_string(j + 3) + "," +
                                std::to_string(l) + ")-configuration without a (" +
                                std::to_string(j + 3) + "," + std::to_string(j) + ") inside");
                 }
             }
             // The K_{2,2,2,2} decomposition keeps this non-vacuous: an
             // (8,6)-configuration with (8,5)-subconfigurations.
             const auto k6 = decompose_k2222({0, 1, 2, 3});
             Configuration c;
             c.cycles.assign(k6.begin(), k6.end());
             ++checked;
             expect(contains_dense_sub(c, 5), "K_{2,2,2,2} counterexample");
             d = std::to_string(checked) + " configurations checked";
         }});

    criteria.push_back(
        {8, "deletion method at v=500: certified, spread, median above the bound", 300.0,
         [](std::string& d) {
             PackerConfig cfg;
             cfg.order = 500;
             cfg.r = 4;
             cfg.c_prime = Rational(1, 88);
             cfg.seed = 20250809;
             cfg.trials = 20;
             const auto outs = run_packer_trials(cfg); // certifies every outcome
             std::vector<std::uint64_t> retained;
             for (const auto& o : outs) {
                 retained.push_back(o.packing.cycles.size());
                 const auto rep = is_strictly_r_sparse(o.packing, 4);
                 expect(rep.strict, "outcome not strictly 4-sparse");
                 // No two retained cycles span <= 6 vertices.
                 std::vector<std::vector<int>> at(cfg.order);
                 for (std::size_t i = 0; i < o.packing.cycles.size(); ++i)
                     for (Vertex x : o.packing.cycles[i].v) at[x].push_back(int(i));
                 for (std::size_t i = 0; i < o.packing.cycles.size(); ++i) {
                     std::vector<int> peers;
                     for (Vertex x : o.packing.cycles[i].v)
                         for (int jj : at[x])
                             if (std::size_t(jj) != i) peers.push_back(jj);
                     std::sort(peers.begin(), peers.end());
                     for (std::size_t kk = 0; kk + 1 < peers.size(); ++kk)
                         expect(peers[kk] != peers[kk + 1], "two cycles span <= 6 vertices");
                 }
             }
             std::sort(retained.begin(), retained.end());
             // Median of 20 as an exact rational: (r[9] + r[10]) / 2 >= 15625/176.
             const Rational median(BigInt(retained[9] + retained[10]), 2);
             const Rational bound = expected_bounds(500, cfg.c_prime).guaranteed_bound;
             expect(bound == Rational(15625, 176), "bound constant mismatch");
             expect(median >= bound,
                    "median " + to_string(median) + " below bound " + to_string(bound));
             d = "median " + to_string(median) + " >= " + to_string(bound) + " ~ 88.78";
         }});

    criteria.push_back({9, "expected_bounds exact rationals at (1000, 1/88)", 0,
                        [](std::string& d) {
                            const auto rep = expected_bounds(1000, Rational(1, 88));
                            // Independent big-integer evaluation.
                            BigInt c4 = 1;
                            for (int i = 0; i < 4; ++i) c4 *= 1000 - i;
                            c4 /= 24;
                            const Rational et = Rational(3 * c4) * Rational(1, 88) /
                                                Rational(BigInt(1000) * 1000);
                            expect(rep.expected_cycles == et, "E(t) mismatch");
                            expect(rep.expected_cycles == parse_rational("497005497/352000"),
                                   "E(t) frozen value mismatch");
                            expect(rep.guaranteed_bound == parse_rational("15625/44"),
                                   "bound mismatch");
                            expect(to_double(rep.guaranteed_bound) > 355.11 &&
                                       to_double(rep.guaranteed_bound) < 355.12,
                                   "bound approximation off");
                            d = "bound 15625/44, E(t) 497005497/352000";
                        }});

    criteria.push_back(
        {10, "SixTwoOther census invariant across 4CS(17) witnesses", 0, [](std::string& d) {
             const FieldSpec f = make_field(17, 1);
             const auto bases = find_base_candidates(f);
             expect(bases.size() >= 2, "need two witnesses");
             const auto a = construct_character_4cs(f, bases[0]);
             const auto b = construct_character_4cs(f, bases[1]);
             expect(validate_system(a).ok && validate_system(b).ok, "invalid system");
             const auto ca = census_pairs(a), cb = census_pairs(b);
             expect(ca.six_two_other == cb.six_two_other, "SixTwoOther counts differ");
             d = "count " + std::to_string(ca.six_two_other) + " (x=" +
                 std::to_string(bases[0].x) + " and x=" + std::to_string(bases[1].x) + ")";
         }});

    for (const auto& c : criteria) run(c);
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
