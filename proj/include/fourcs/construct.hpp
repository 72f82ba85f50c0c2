#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fourcs/base_constructions.hpp"
#include "fourcs/composition.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/gdd.hpp"
#include "fourcs/gdd_search.hpp"

#ifndef FOURCS_DEFAULT_FIXTURES
#define FOURCS_DEFAULT_FIXTURES "fixtures/gdd"
#endif

namespace fourcs {

/// Filename used for a fixture of the given type, e.g. "2x9-5x1.gdd".
inline std::string gdd_fixture_name(const GddType& t) {
    std::string s = format_gdd_type(t);
    for (char& c : s) {
        if (c == '^') c = 'x';
        if (c == ',') c = '-';
    }
    return s + ".gdd";
}

/// Resolves 4-GDD requests through, in order: direct constructions
/// (transversal designs, the AG(2,4) plane, S(2,4,13)/S(2,4,16), weight-4
/// inflation), fixture files, and randomized exact-cover search.
struct GddProvider {
    std::optional<std::string> fixtures_dir; // unset = env/default resolution
    std::uint64_t search_seed = 1;
    std::uint64_t search_budget = 2'000'000;
    int search_restarts = 8;

    std::string resolved_fixtures_dir() const {
        if (fixtures_dir) return *fixtures_dir;
        if (const char* env = std::getenv("FOURCS_FIXTURES")) return env;
        return FOURCS_DEFAULT_FIXTURES;
    }

    /// Provides a validated GDD of the exact type, recording how it was
    /// obtained in `source` when given. Throws GddUnavailable on failure.
    GroupDivisibleDesign provide(const GddType& type, std::string* source = nullptr,
                                 int depth = 0) const {
        auto note = [&](const std::string& s) {
            if (source) *source = s;
        };
        if (type.size() == 1) {
            const auto [size, count] = *type.begin();
            if (count == 1) {
                note("trivial");
                return trivial_gdd(size);
            }
            if (size == 1 && count == 13) {
                note("direct:PG(2,3)");
                return construct_pg23_gdd();
            }
            if (size == 1 && count == 16) {
                note("direct:S(2,4,16)");
                return construct_s2416_gdd();
            }
            if (count == 4) {
                if (size == 4) {
                    note("direct:AG(2,4)");
                    return construct_ag24_gdd();
                }
                try {
                    auto g = construct_td4(size);
                    note("direct:TD(4," + std::to_string(size) + ")");
                    return g;
                } catch (const Error& e) {
                    if (e.code() != Errc::unsupported) throw;
                }
            }
        }
        if (auto g = try_fixture(type)) {
            note("fixture:" + gdd_fixture_name(type));
            return *g;
        }
        // Uniform g^u with 4 | g: inflate a (g/4)^u GDD by weight 4.
        if (type.size() == 1 && depth == 0) {
            const auto [size, count] = *type.begin();
            if (size % 4 == 0) {
                try {
                    std::string inner_src;
                    const GddType base{{size / 4, count}};
                    auto g = inflate_gdd(provide(base, &inner_src, depth + 1), 4);
                    note("inflate4(" + inner_src + ")");
                    return g;
                } catch (const Error&) {
                    // fall through to search
                }
            }
        }
        for (int i = 0; i < search_restarts; ++i) {
            try {
                auto g = search_gdd(type, search_seed + std::uint64_t(i), search_budget);
                note("search:seed=" + std::to_string(search_seed + std::uint64_t(i)));
                return g;
            } catch (const Error& e) {
                if (e.code() == Errc::infeasible)
                    raise(Errc::gdd_unavailable,
                          "type " + format_gdd_type(type) + " is infeasible");
                if (e.code() != Errc::budget_exhausted) throw;
            }
        }
        raise(Errc::gdd_unavailable, "no 4-GDD of type " + format_gdd_type(type) +
                                         " available (direct, fixture, or search)");
    }

private:
    std::optional<GroupDivisibleDesign> try_fixture(const GddType& type) const {
        namespace fs = std::filesystem;
        const fs::path path = fs::path(resolved_fixtures_dir()) / gdd_fixture_name(type);
        std::error_code ec;
        if (!fs::exists(path, ec)) return std::nullopt;
        auto g = load_gdd_file(path.string());
        if (g.type_signature() != type)
            raise(Errc::wrong_type, "fixture " + path.string() + " has wrong type");
        return g;
    }
};

struct BuildResult {
    FourCycleSystem system;
    std::string route;  // "cyclic" | "character" | "composition" | "trivial"
    int case_id = 0;    // composition case, when applicable
    std::vector<std::string> provenance; // human-readable comment lines
};

/// The composition route for admissible non-prime-power orders, following the
/// case split on v mod 48.
inline BuildResult compose_for_order(std::uint64_t v, const GddProvider& provider = {},
                                     const ComposeOptions& opt = {}) {
    if (v % 8 != 1) raise(Errc::not_admissible, std::to_string(v) + " is not 1 (mod 8)");
    BuildResult out;
    out.route = "composition";
    std::string gdd_src;
    if (v % 24 == 1) {
        const std::uint64_t t = (v - 1) / 24;
        if (t < 4)
            raise(Errc::gdd_unavailable,
                  "no 4-GDD of type 12^t with t < 4 (v = " + std::to_string(v) + ")");
        out.case_id = 1;
        const auto gdd = provider.provide(GddType{{12, std::uint32_t(t)}}, &gdd_src);
        out.system = double_plus_one(gdd, {{12, construct_character_4cs(25)}}, opt);
        out.provenance.push_back("gdd: type=12^" + std::to_string(t) + " source=" + gdd_src);
        out.provenance.push_back("ingredients: 12 -> 4CS(25) [character GF(25)]");
    } else if (v % 24 == 9) {
        const std::uint64_t t = (v - 9) / 24;
        out.case_id = 2;
        const auto gdd = provider.provide(GddType{{4, std::uint32_t(3 * t + 1)}}, &gdd_src);
        out.system = double_plus_one(gdd, {{4, construct_cyclic_4cs9()}}, opt);
        out.provenance.push_back("gdd: type=4^" + std::to_string(3 * t + 1) +
                                 " source=" + gdd_src);
        out.provenance.push_back("ingredients: 4 -> 4CS(9) [cyclic]");
    } else if (v % 48 == 17) {
        const std::uint64_t t = (v - 17) / 48;
        out.case_id = 3;
        const auto gdd = provider.provide(GddType{{8, std::uint32_t(3 * t + 1)}}, &gdd_src);
        out.system = double_plus_one(gdd, {{8, construct_character_4cs(17)}}, opt);
        out.provenance.push_back("gdd: type=8^" + std::to_string(3 * t + 1) +
                                 " source=" + gdd_src);
        out.provenance.push_back("ingredients: 8 -> 4CS(17) [character GF(17)]");
    } else { // v % 48 == 41
        const std::uint64_t t = (v - 41) / 48;
        if (t < 3)
            raise(Errc::gdd_unavailable,
                  "no 4-GDD of type 2^(3t) 5^1 with t < 3 (v = " + std::to_string(v) + ")");
        out.case_id = 4;
        const auto gdd =
            provider.provide(GddType{{2, std::uint32_t(3 * t)}, {5, 1}}, &gdd_src);
        out.system =
            quadruple_case4(gdd, construct_character_4cs(17), construct_character_4cs(41), opt);
        out.provenance.push_back("gdd: type=2^" + std::to_string(3 * t) +
                                 ",5^1 source=" + gdd_src);
        out.provenance.push_back(
            "ingredients: 2 -> 4CS(17), 5 -> 4CS(41) [character GF(17), GF(41)]");
    }
    out.provenance.insert(out.provenance.begin(),
                          "route: composition case=" + std::to_string(out.case_id) +
                              " v=" + std::to_string(v));
    return out;
}

/// Builds a strictly 4-sparse 4CS(v) for any admissible v, preferring the
/// direct routes (cyclic for v = 9, the character construction for prime
/// powers not a power of three) over composition. The result is validated,
/// and scanned when small enough per opt.certify_limit.
inline BuildResult construct_any(std::uint64_t v, const GddProvider& provider = {},
                                 const ComposeOptions& opt = {}) {
    if (v % 8 != 1) raise(Errc::not_admissible, std::to_string(v) + " is not 1 (mod 8)");
    BuildResult out;
    if (v == 1) {
        out.route = "trivial";
        out.system.order = 1;
        out.provenance.push_back("route: trivial v=1");
        return out;
    }
    if (v == 9) {
        out.route = "cyclic";
        out.system = construct_cyclic_4cs9();
        out.provenance.push_back("route: cyclic v=9 base=(0,1,8,5) group=Z_9");
        detail_compose::certify(out.system, opt, "construct_any");
        return out;
    }
    std::uint32_t p = 0, k = 0;
    if (FieldSpec::prime_power(v, p, k) && p != 3) {
        out.route = "character";
        const FieldSpec f(p, k);
        const auto base = find_base_x(f);
        out.system = construct_character_4cs(f, base);
        std::string mod;
        for (auto c : f.modulus()) mod += (mod.empty() ? "" : ",") + std::to_string(c);
        out.provenance.push_back("route: character q=" + std::to_string(v) +
                                 " p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                 (k > 1 ? " modulus=[" + mod + "]" : "") +
                                 " alpha=" + std::to_string(f.alpha()) +
                                 " x=" + std::to_string(base.x));
        out.provenance.push_back("labels: field elements in id order (c0 + c1 p + ...)");
        detail_compose::certify(out.system, opt, "construct_any");
        return out;
    }
    return compose_for_order(v, provider, opt);
}

} // namespace fourcs
