#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"

namespace fourcs {

struct LoadedPacking {
    CyclePacking packing;
    bool system_tag = false; // header said 4CS rather than 4CP
    std::vector<std::string> comments;
};

/// Writes the text format: header `4CP v=<v> cycles=<n>` (tag `4CS` for
/// systems), optional `#` comment lines, then one canonical cycle per line.
/// Cycle order is sorted, so equal packings serialize identically.
inline void save_packing(const CyclePacking& p, std::ostream& os, bool as_system,
                         const std::vector<std::string>& comments = {}) {
    os << (as_system ? "4CS" : "4CP") << " v=" << p.order << " cycles=" << p.cycles.size() << "\n";
    for (const auto& c : comments) os << "# " << c << "\n";
    auto sorted = p.cycles;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& c : sorted)
        os << c.v[0] << ' ' << c.v[1] << ' ' << c.v[2] << ' ' << c.v[3] << "\n";
}

inline LoadedPacking load_packing(std::istream& is) {
    LoadedPacking out;
    std::string line;
    bool have_header = false;
    std::set<FourCycle> seen;
    std::size_t declared = 0;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        raise(Errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            out.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2)
                                                                     : line.substr(1));
            continue;
        }
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag, vfield, cfield;
            ls >> tag >> vfield >> cfield;
            if (tag != "4CP" && tag != "4CS") fail("expected 4CP/4CS header");
            if (vfield.rfind("v=", 0) != 0 || cfield.rfind("cycles=", 0) != 0)
                fail("malformed header fields");
            try {
                out.packing.order = Vertex(std::stoul(vfield.substr(2)));
                declared = std::stoul(cfield.substr(7));
            } catch (const std::exception&) {
                fail("malformed header numbers");
            }
            out.system_tag = tag == "4CS";
            have_header = true;
            continue;
        }
        std::uint64_t a, b, c, d;
        if (!(ls >> a >> b >> c >> d)) fail("expected four vertex labels");
        std::string rest;
        if (ls >> rest) fail("trailing tokens after cycle");
        if (a >= out.packing.order || b >= out.packing.order || c >= out.packing.order ||
            d >= out.packing.order)
            fail("vertex label out of range");
        FourCycle cyc;
        try {
            cyc = canonicalize(Vertex(a), Vertex(b), Vertex(c), Vertex(d));
        } catch (const Error&) {
            fail("repeated vertex in cycle");
        }
        if (!seen.insert(cyc).second) fail("duplicate cycle");
        out.packing.cycles.push_back(cyc);
    }
    if (!have_header) raise(Errc::parse_error, "missing 4CP/4CS header");
    if (out.packing.cycles.size() != declared)
        raise(Errc::parse_error, "cycle count " + std::to_string(out.packing.cycles.size()) +
                                     " does not match header (" + std::to_string(declared) + ")");
    return out;
}

inline void save_packing_file(const CyclePacking& p, const std::string& path, bool as_system,
                              const std::vector<std::string>& comments = {}) {
    std::ofstream f(path);
    if (!f) raise(Errc::parse_error, "cannot open " + path + " for writing");
    save_packing(p, f, as_system, comments);
}

inline LoadedPacking load_packing_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) raise(Errc::parse_error, "cannot open " + path);
    return load_packing(f);
}

} // namespace fourcs
