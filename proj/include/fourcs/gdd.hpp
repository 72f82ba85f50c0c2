#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/field.hpp"

namespace fourcs {

/// Multiset of group sizes, e.g. {2:9, 5:1} for type 2^9 5^1.
using GddType = std::map<std::uint32_t, std::uint32_t>;

inline std::string format_gdd_type(const GddType& t) {
    std::string s;
    for (const auto& [size, count] : t) {
        if (!s.empty()) s += ',';
        s += std::to_string(size) + "^" + std::to_string(count);
    }
    return s;
}

/// Parses "2^9,5^1" (also accepts a bare "12" as 12^1).
inline GddType parse_gdd_type(const std::string& s) {
    GddType t;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ',')) {
        if (part.empty()) raise(Errc::parse_error, "empty component in type " + s);
        const auto caret = part.find('^');
        try {
            const std::uint32_t size = std::uint32_t(std::stoul(part.substr(0, caret)));
            const std::uint32_t count =
                caret == std::string::npos ? 1 : std::uint32_t(std::stoul(part.substr(caret + 1)));
            if (size == 0 || count == 0) raise(Errc::parse_error, "zero in type " + s);
            t[size] += count;
        } catch (const std::invalid_argument&) {
            raise(Errc::parse_error, "malformed type " + s);
        } catch (const std::out_of_range&) {
            raise(Errc::parse_error, "malformed type " + s);
        }
    }
    if (t.empty()) raise(Errc::parse_error, "empty type string");
    return t;
}

inline std::uint32_t gdd_type_points(const GddType& t) {
    std::uint32_t n = 0;
    for (const auto& [size, count] : t) n += size * count;
    return n;
}

/// Cross pairs (pairs of points from distinct groups) for a type.
inline std::uint64_t gdd_cross_pairs(const GddType& t) {
    const std::uint64_t n = gdd_type_points(t);
    std::uint64_t within = 0;
    for (const auto& [size, count] : t)
        within += std::uint64_t(count) * size * (size - 1) / 2;
    return n * (n - 1) / 2 - within;
}

/// A 4-GDD: points [0, n), groups partitioning them, blocks of size four
/// meeting each group at most once, every cross pair in exactly one block.
struct GroupDivisibleDesign {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> groups;
    std::vector<std::array<std::uint32_t, 4>> blocks;

    GddType type_signature() const {
        GddType t;
        for (const auto& g : groups) ++t[std::uint32_t(g.size())];
        return t;
    }

    /// Sorts group members, groups by first member, block members, blocks
    /// lexicographically; the canonical form used by store_gdd.
    void normalize() {
        for (auto& g : groups) std::sort(g.begin(), g.end());
        std::sort(groups.begin(), groups.end());
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end());
    }
};

inline ValidationReport validate_gdd(const GroupDivisibleDesign& g) {
    // Groups partition the point set.
    std::vector<std::int32_t> group_of(g.n, -1);
    for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
        if (g.groups[gi].empty()) return ValidationReport::fail("empty group");
        for (std::uint32_t x : g.groups[gi]) {
            if (x >= g.n) return ValidationReport::fail("group point out of range");
            if (group_of[x] != -1)
                return ValidationReport::fail("point " + std::to_string(x) +
                                              " in two groups");
            group_of[x] = std::int32_t(gi);
        }
    }
    for (std::uint32_t x = 0; x < g.n; ++x)
        if (group_of[x] == -1)
            return ValidationReport::fail("point " + std::to_string(x) + " in no group");

    // Blocks: size four, distinct points, at most one per group, and exact
    // cross-pair coverage.
    std::vector<std::uint8_t> covered(std::uint64_t(g.n) * (g.n - 1) / 2, 0);
    for (const auto& b : g.blocks) {
        for (int i = 0; i < 4; ++i) {
            if (b[i] >= g.n) return ValidationReport::fail("block point out of range");
            for (int j = i + 1; j < 4; ++j) {
                if (b[i] == b[j]) return ValidationReport::fail("repeated point in block");
                if (group_of[b[i]] == group_of[b[j]])
                    return ValidationReport::fail(
                        "block meets a group twice: {" + std::to_string(b[i]) + "," +
                            std::to_string(b[j]) + "}",
                        make_edge(b[i], b[j]));
                auto& c = covered[detail::tri_index(g.n, b[i], b[j])];
                if (c)
                    return ValidationReport::fail("pair {" + std::to_string(b[i]) + "," +
                                                      std::to_string(b[j]) +
                                                      "} covered twice",
                                                  make_edge(b[i], b[j]));
                c = 1;
            }
        }
    }
    for (std::uint32_t i = 0; i < g.n; ++i)
        for (std::uint32_t j = i + 1; j < g.n; ++j)
            if (group_of[i] != group_of[j] && !covered[detail::tri_index(g.n, i, j)])
                return ValidationReport::fail(
                    "cross pair {" + std::to_string(i) + "," + std::to_string(j) +
                        "} uncovered",
                    Edge{i, j});
    return ValidationReport::pass();
}

// ---------------------------------------------------------------------------
// Direct constructions
// ---------------------------------------------------------------------------

/// One group spanning all points: no cross pairs, no blocks.
inline GroupDivisibleDesign trivial_gdd(std::uint32_t n) {
    GroupDivisibleDesign g;
    g.n = n;
    g.groups.emplace_back(n);
    std::iota(g.groups[0].begin(), g.groups[0].end(), 0);
    return g;
}

/// Points and lines of the affine plane over GF(4); the parallel class of
/// lines x = c becomes the groups, the other 16 lines the blocks.
/// Point (x, y) gets label 4*id(x) + id(y).
inline GroupDivisibleDesign construct_ag24_gdd() {
    const FieldSpec f(2, 2);
    GroupDivisibleDesign g;
    g.n = 16;
    for (std::uint32_t c = 0; c < 4; ++c) {
        std::vector<std::uint32_t> grp;
        for (std::uint32_t y = 0; y < 4; ++y) grp.push_back(4 * c + y);
        g.groups.push_back(std::move(grp));
    }
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t b = 0; b < 4; ++b) {
            std::array<std::uint32_t, 4> line{};
            for (std::uint64_t x = 0; x < 4; ++x)
                line[x] = std::uint32_t(4 * x + f.add(f.mul(s, x), b));
            std::sort(line.begin(), line.end());
            g.blocks.push_back(line);
        }
    g.normalize();
    return g;
}

/// The projective plane of order 3 as a 4-GDD of type 1^13 (groups are
/// singletons): lines are the translates of the planar difference set
/// {0, 1, 3, 9} mod 13.
inline GroupDivisibleDesign construct_pg23_gdd() {
    GroupDivisibleDesign g;
    g.n = 13;
    for (std::uint32_t x = 0; x < 13; ++x) g.groups.push_back({x});
    for (std::uint32_t a = 0; a < 13; ++a) {
        std::array<std::uint32_t, 4> b{a, (1 + a) % 13, (3 + a) % 13, (9 + a) % 13};
        std::sort(b.begin(), b.end());
        g.blocks.push_back(b);
    }
    g.normalize();
    return g;
}

/// S(2,4,16) = the full affine plane AG(2,4) (all 20 lines) as a type 1^16
/// 4-GDD.
inline GroupDivisibleDesign construct_s2416_gdd() {
    const auto ag = construct_ag24_gdd();
    GroupDivisibleDesign g;
    g.n = 16;
    for (std::uint32_t x = 0; x < 16; ++x) g.groups.push_back({x});
    g.blocks = ag.blocks;
    for (const auto& grp : ag.groups) {
        std::array<std::uint32_t, 4> b{grp[0], grp[1], grp[2], grp[3]};
        g.blocks.push_back(b);
    }
    g.normalize();
    return g;
}

/// Wilson inflation by weight w: each point becomes w points, each block a
/// TD(4, w) on its w-fold copies, groups inflate pointwise. Point (x, c)
/// gets label w*x + c. Requires a TD(4, w), i.e. w >= 3 and w != 2 (mod 4)
/// via construct_td4.
inline GroupDivisibleDesign construct_td4(std::uint32_t n); // forward

inline GroupDivisibleDesign inflate_gdd(const GroupDivisibleDesign& base, std::uint32_t w) {
    const GroupDivisibleDesign td = construct_td4(w);
    GroupDivisibleDesign g;
    g.n = base.n * w;
    for (const auto& grp : base.groups) {
        std::vector<std::uint32_t> ng;
        for (std::uint32_t x : grp)
            for (std::uint32_t c = 0; c < w; ++c) ng.push_back(w * x + c);
        g.groups.push_back(std::move(ng));
    }
    for (const auto& b : base.blocks)
        for (const auto& tb : td.blocks) {
            std::array<std::uint32_t, 4> nb{};
            for (int i = 0; i < 4; ++i) {
                const std::uint32_t role = tb[i] / w; // TD group = role in the block
                const std::uint32_t c = tb[i] % w;
                nb[i] = w * b[role] + c;
            }
            std::sort(nb.begin(), nb.end());
            g.blocks.push_back(nb);
        }
    g.normalize();
    return g;
}

/// Transversal design TD(4, n) as a 4-GDD of type n^4; point (g, e) gets
/// label n*g + e. Prime powers n >= 3 use the two-MOLS construction over
/// GF(n); other n are built as MacNeish products (Wilson inflation) of their
/// prime-power factors. No TD(4, n) is available for n in {2, 6} or any
/// n = 2 (mod 4).
inline GroupDivisibleDesign construct_td4(std::uint32_t n) {
    std::uint32_t p = 0, k = 0;
    if (n >= 3 && FieldSpec::prime_power(n, p, k)) {
        const FieldSpec f(p, k);
        GroupDivisibleDesign g;
        g.n = 4 * n;
        for (std::uint32_t r = 0; r < 4; ++r) {
            std::vector<std::uint32_t> grp(n);
            std::iota(grp.begin(), grp.end(), n * r);
            g.groups.push_back(std::move(grp));
        }
        // Block (x, y): {(0,x), (1,y), (2, x+y), (3, m*x+y)} with m = element 2.
        for (std::uint64_t x = 0; x < n; ++x)
            for (std::uint64_t y = 0; y < n; ++y) {
                std::array<std::uint32_t, 4> b{
                    std::uint32_t(x), std::uint32_t(n + y),
                    std::uint32_t(2 * n + f.add(x, y)),
                    std::uint32_t(3 * n + f.add(f.mul(2, x), y))};
                g.blocks.push_back(b);
            }
        g.normalize();
        return g;
    }
    if (n < 3 || n % 4 == 2)
        raise(Errc::unsupported, "no TD(4, " + std::to_string(n) + ") available");
    // Composite with all prime-power factors >= 3: peel the smallest one.
    std::uint32_t m = n;
    std::uint32_t d = 2;
    while (m % d != 0) ++d;
    std::uint32_t f1 = 1;
    while (m % d == 0) {
        m /= d;
        f1 *= d;
    }
    return inflate_gdd(construct_td4(m), f1);
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Canonical serialization; loading the output and storing again is
/// byte-identical.
inline void store_gdd(const GroupDivisibleDesign& gdd, std::ostream& os) {
    auto g = gdd;
    g.normalize();
    os << "GDD n=" << g.n << " type=" << format_gdd_type(g.type_signature()) << "\n";
    for (const auto& grp : g.groups) {
        os << "group:";
        for (std::uint32_t x : grp) os << ' ' << x;
        os << "\n";
    }
    for (const auto& b : g.blocks) {
        os << "block:";
        for (std::uint32_t x : b) os << ' ' << x;
        os << "\n";
    }
}

inline GroupDivisibleDesign load_gdd(std::istream& is) {
    GroupDivisibleDesign g;
    std::string line;
    bool have_header = false;
    GddType declared;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        raise(Errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (!have_header) {
            if (tag != "GDD") fail("expected GDD header");
            std::string nfield, tfield;
            ls >> nfield >> tfield;
            if (nfield.rfind("n=", 0) != 0 || tfield.rfind("type=", 0) != 0)
                fail("malformed GDD header");
            try {
                g.n = std::uint32_t(std::stoul(nfield.substr(2)));
            } catch (const std::exception&) {
                fail("malformed point count");
            }
            declared = parse_gdd_type(tfield.substr(5));
            have_header = true;
            continue;
        }
        if (tag == "group:") {
            std::vector<std::uint32_t> grp;
            std::uint64_t x;
            while (ls >> x) grp.push_back(std::uint32_t(x));
            if (grp.empty()) fail("empty group line");
            g.groups.push_back(std::move(grp));
        } else if (tag == "block:") {
            std::array<std::uint32_t, 4> b{};
            std::uint64_t x;
            int cnt = 0;
            while (ls >> x) {
                if (cnt == 4) fail("block with more than four points");
                b[cnt++] = std::uint32_t(x);
            }
            if (cnt != 4) fail("block with fewer than four points");
            g.blocks.push_back(b);
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) raise(Errc::parse_error, "missing GDD header");
    if (g.type_signature() != declared)
        raise(Errc::parse_error, "group sizes do not match declared type");
    if (auto rep = validate_gdd(g); !rep)
        raise(Errc::validation_failed, rep.detail);
    return g;
}

inline void store_gdd_file(const GroupDivisibleDesign& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) raise(Errc::parse_error, "cannot open " + path + " for writing");
    store_gdd(g, f);
}

inline GroupDivisibleDesign load_gdd_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) raise(Errc::parse_error, "cannot open " + path);
    return load_gdd(f);
}

} // namespace fourcs
