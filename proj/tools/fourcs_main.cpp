// Command-line front end: construct / verify / pack / gdd / census.
//
// Exit codes: 0 success, 1 validation or certification failure (including a
// scan finding a forbidden configuration), 2 usage errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fourcs/fourcs.hpp"

namespace {

using nlohmann::json;

int exit_code_for(const fourcs::Error& e) {
    switch (e.code()) {
        case fourcs::Errc::not_prime:
        case fourcs::Errc::limit_exceeded:
        case fourcs::Errc::zero_argument:
        case fourcs::Errc::bad_order:
        case fourcs::Errc::not_admissible:
        case fourcs::Errc::unsupported:
        case fourcs::Errc::infeasible:
        case fourcs::Errc::duplicate_vertex:
        case fourcs::Errc::duplicate_point:
        case fourcs::Errc::wrong_type:
        case fourcs::Errc::not_edge_disjoint:
        case fourcs::Errc::precondition_violated:
        case fourcs::Errc::bad_cprime:
        case fourcs::Errc::bad_argument:
            return 2;
        default:
            return 1;
    }
}

json cycle_json(const fourcs::FourCycle& c) {
    return json::array({c.v[0], c.v[1], c.v[2], c.v[3]});
}

json witnesses_json(const std::vector<fourcs::DenseWitness>& ws) {
    json a = json::array();
    for (const auto& w : ws) {
        json cfg = json::array();
        for (const auto& c : w) cfg.push_back(cycle_json(c));
        a.push_back(cfg);
    }
    return a;
}

json scan_json(const fourcs::CyclePacking& p, const fourcs::ScanReport& rep) {
    json classes;
    {
        json dd;
        dd["count"] = rep.double_diamonds;
        json w = json::array();
        for (const auto& [a, b] : rep.dd_witnesses) w.push_back({cycle_json(a), cycle_json(b)});
        dd["witnesses"] = w;
        classes["DoubleDiamond"] = dd;
    }
    {
        json jd;
        jd["count"] = rep.jointed_diamonds;
        json w = json::array();
        for (const auto& t : rep.jd_witnesses)
            w.push_back({cycle_json(t[0]), cycle_json(t[1]), cycle_json(t[2])});
        jd["witnesses"] = w;
        classes["JointedDiamond"] = jd;
    }
    for (const auto& [j, count] : rep.dense.count_by_j) {
        json d;
        d["count"] = count;
        const auto it = rep.dense.witnesses_by_j.find(j);
        d["witnesses"] =
            it == rep.dense.witnesses_by_j.end() ? json::array() : witnesses_json(it->second);
        classes["Dense(" + std::to_string(j + 3) + "," + std::to_string(j) + ")"] = d;
    }
    classes["SixThreeA"] = {{"count", rep.six_three_a}};
    classes["SixThreeB"] = {{"count", rep.six_three_b}};
    json out;
    out["order"] = p.order;
    out["cycles"] = p.cycles.size();
    out["strict"] = rep.strict;
    out["dAvoiding"] = rep.d_avoiding;
    out["rMax"] = rep.r_max;
    out["rRequested"] = rep.r_requested;
    out["jdFastPath"] = rep.jd_fast_path;
    out["classes"] = classes;
    return out;
}

json census_json(const fourcs::PairCensus& c) {
    return {{"DoubleDiamond", c.double_diamond},
            {"SixTwoOther", c.six_two_other},
            {"SevenTwo", c.seven_two},
            {"EightTwo", c.eight_two}};
}

void print_scan_text(const fourcs::CyclePacking& p, const fourcs::ScanReport& rep) {
    std::cout << "order " << p.order << ", " << p.cycles.size() << " cycles\n";
    std::cout << "double-diamonds:  " << rep.double_diamonds << "\n";
    std::cout << "jointed-diamonds: " << rep.jointed_diamonds << "\n";
    for (const auto& [j, count] : rep.dense.count_by_j) {
        std::cout << "(" << j + 3 << "," << j << ")-configurations: " << count;
        if (j == 3 && count > 0)
            std::cout << "  [type A " << rep.six_three_a << ", type B " << rep.six_three_b << "]";
        if (j == 4 && rep.jd_fast_path) std::cout << "  [via jointed-diamond absence]";
        std::cout << "\n";
    }
    std::cout << "strict: " << (rep.strict ? "yes" : "no") << "  rMax: " << rep.r_max << "\n";
}

struct CommonScanFlags {
    int r = 4;
    std::size_t witness_cap = 100;
    int max_r = 6;
    unsigned threads = 0;

    fourcs::ScanOptions options() const {
        fourcs::ScanOptions o;
        o.witness_cap = witness_cap;
        o.max_r = max_r;
        o.threads = threads;
        return o;
    }
};

int cmd_construct(std::uint64_t order, const std::string& route, const std::string& gdd_file,
                  const std::string& emit, bool as_json, fourcs::Vertex certify_limit,
                  const CommonScanFlags& flags) {
    fourcs::ComposeOptions opt;
    opt.certify_limit = certify_limit;
    opt.scan = flags.options();
    fourcs::GddProvider provider;
    fourcs::BuildResult result;
    if (!gdd_file.empty()) {
        const auto gdd = fourcs::load_gdd_file(gdd_file);
        // Only composition can consume an explicit GDD.
        if (route == "character" || route == "cyclic")
            fourcs::raise(fourcs::Errc::bad_argument, "--gdd-file requires the composition route");
        const auto type = gdd.type_signature();
        std::string src = "file:" + gdd_file;
        if (order % 8 != 1)
            fourcs::raise(fourcs::Errc::not_admissible, std::to_string(order) + " is not 1 (mod 8)");
        if (type.size() == 2 && type.count(2) && type.count(5)) {
            result.system = fourcs::quadruple_case4(gdd, fourcs::construct_character_4cs(17),
                                                    fourcs::construct_character_4cs(41), opt);
            result.route = "composition";
            result.case_id = 4;
        } else {
            std::map<std::uint32_t, fourcs::CyclePacking> ingredients;
            for (const auto& grp : gdd.groups) {
                const auto gs = std::uint32_t(grp.size());
                if (ingredients.count(gs)) continue;
                const std::uint64_t o = 2 * gs + 1;
                ingredients.emplace(gs, o == 9 ? fourcs::construct_cyclic_4cs9()
                                               : fourcs::construct_character_4cs(o));
            }
            result.system = fourcs::double_plus_one(gdd, ingredients, opt);
            result.route = "composition";
        }
        if (result.system.order != order)
            fourcs::raise(fourcs::Errc::ingredient_mismatch,
                          "GDD yields order " + std::to_string(result.system.order) +
                              ", not " + std::to_string(order));
        result.provenance.push_back("gdd: type=" + fourcs::format_gdd_type(type) +
                                    " source=" + src);
    } else if (route == "composition") {
        result = fourcs::compose_for_order(order, provider, opt);
    } else if (route == "character") {
        result.system = fourcs::construct_character_4cs(order);
        result.route = "character";
        result.provenance.push_back("route: character q=" + std::to_string(order));
    } else if (route == "cyclic") {
        if (order != 9) fourcs::raise(fourcs::Errc::bad_order, "cyclic route is for order 9");
        result.system = fourcs::construct_cyclic_4cs9();
        result.route = "cyclic";
        result.provenance.push_back("route: cyclic v=9 base=(0,1,8,5) group=Z_9");
    } else {
        result = fourcs::construct_any(order, provider, opt);
    }

    std::vector<std::string> comments = {"generator: fourcs construct"};
    comments.insert(comments.end(), result.provenance.begin(), result.provenance.end());
    if (!emit.empty()) fourcs::save_packing_file(result.system, emit, true, comments);

    if (as_json) {
        json out;
        out["order"] = result.system.order;
        out["cycles"] = result.system.cycles.size();
        out["route"] = result.route;
        if (result.case_id) out["case"] = result.case_id;
        out["provenance"] = result.provenance;
        if (!emit.empty()) out["file"] = emit;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "constructed 4CS(" << result.system.order << ") with "
                  << result.system.cycles.size() << " cycles\n";
        for (const auto& line : result.provenance) std::cout << "  " << line << "\n";
        if (!emit.empty()) std::cout << "  wrote " << emit << "\n";
        if (result.system.order <= certify_limit)
            std::cout << "  certified strictly 4-sparse\n";
    }
    return 0;
}

int cmd_verify(const std::string& path, bool with_census, bool as_json,
               const CommonScanFlags& flags) {
    const auto loaded = fourcs::load_packing_file(path);
    const auto& p = loaded.packing;
    const auto vrep = loaded.system_tag ? fourcs::validate_system(p) : fourcs::validate_packing(p);
    if (!vrep) {
        if (as_json) {
            json out;
            out["order"] = p.order;
            out["cycles"] = p.cycles.size();
            out["valid"] = false;
            out["error"] = vrep.detail;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cerr << "invalid " << (loaded.system_tag ? "system" : "packing") << ": "
                      << vrep.detail << "\n";
        }
        return 1;
    }
    const auto rep = fourcs::is_strictly_r_sparse(p, flags.r, flags.options());
    if (as_json) {
        json out = scan_json(p, rep);
        out["valid"] = true;
        out["system"] = loaded.system_tag;
        if (with_census) out["census"] = census_json(fourcs::census_pairs(p, flags.options()));
        std::cout << out.dump(2) << "\n";
    } else {
        print_scan_text(p, rep);
        if (with_census) {
            const auto c = fourcs::census_pairs(p, flags.options());
            std::cout << "pair census: DoubleDiamond=" << c.double_diamond
                      << " SixTwoOther=" << c.six_two_other << " SevenTwo=" << c.seven_two
                      << " EightTwo=" << c.eight_two << "\n";
        }
    }
    return rep.strict ? 0 : 1;
}

int cmd_pack(std::uint64_t order, int r, const std::string& cprime, std::uint64_t seed,
             bool seed_given, int trials, const std::string& emit, bool as_json,
             const CommonScanFlags& flags) {
    fourcs::PackerConfig cfg;
    cfg.order = fourcs::Vertex(order);
    cfg.r = r;
    cfg.c_prime = fourcs::parse_rational(cprime);
    cfg.trials = trials;
    cfg.scan = flags.options();
    cfg.threads = flags.threads;
    if (seed_given) {
        cfg.seed = seed;
    } else {
        cfg.seed = std::random_device{}();
        std::cout << "seed: " << cfg.seed << " (use --seed to reproduce)\n";
    }
    const auto best = fourcs::random_sparse_packing(cfg);
    const auto bounds = fourcs::expected_bounds(order, cfg.c_prime, r);
    if (!emit.empty()) {
        std::vector<std::string> comments = {
            "generator: fourcs pack",
            "order=" + std::to_string(order) + " r=" + std::to_string(r) +
                " cprime=" + fourcs::to_string(cfg.c_prime) + " seed=" + std::to_string(cfg.seed) +
                " trials=" + std::to_string(trials),
            "trial-seed=" + std::to_string(best.trial_seed)};
        fourcs::save_packing_file(best.packing, emit, false, comments);
    }
    if (as_json) {
        json out;
        out["order"] = order;
        out["r"] = r;
        out["cPrime"] = fourcs::to_string(cfg.c_prime);
        out["seed"] = cfg.seed;
        out["trials"] = trials;
        out["best"] = {{"trialSeed", best.trial_seed},
                       {"sampled", best.sampled},
                       {"deleted", best.deleted},
                       {"badPairs", best.bad_pairs},
                       {"badDense", best.bad_dense},
                       {"retained", best.packing.cycles.size()}};
        out["bound"] = fourcs::to_string(best.bound);
        out["boundApprox"] = fourcs::to_double(best.bound);
        out["expectedCycles"] = fourcs::to_string(bounds.expected_cycles);
        if (!emit.empty()) out["file"] = emit;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "best trial (seed " << best.trial_seed << "): retained "
                  << best.packing.cycles.size() << " of " << best.sampled << " sampled; deleted "
                  << best.deleted << " (bad pairs " << best.bad_pairs << ", dense "
                  << best.bad_dense << ")\n";
        std::cout << "guaranteed density bound: " << fourcs::to_string(best.bound) << " = "
                  << fourcs::to_double(best.bound) << "\n";
        std::cout << "E(t) = " << fourcs::to_string(bounds.expected_cycles) << " = "
                  << fourcs::to_double(bounds.expected_cycles) << "\n";
        if (!emit.empty()) std::cout << "wrote " << emit << "\n";
    }
    return 0;
}

int cmd_gdd_find(const std::string& type_str, std::uint64_t seed, std::uint64_t budget,
                 int restarts, const std::string& emit) {
    const auto type = fourcs::parse_gdd_type(type_str);
    fourcs::GroupDivisibleDesign gdd;
    bool found = false;
    for (int i = 0; i < restarts && !found; ++i) {
        try {
            gdd = fourcs::search_gdd(type, seed + std::uint64_t(i), budget);
            found = true;
            std::cout << "found with seed " << seed + std::uint64_t(i) << "\n";
        } catch (const fourcs::Error& e) {
            if (e.code() != fourcs::Errc::budget_exhausted) throw;
            std::cerr << "seed " << seed + std::uint64_t(i) << ": budget exhausted\n";
        }
    }
    if (!found)
        fourcs::raise(fourcs::Errc::budget_exhausted,
                      "no solution within budget for any of " + std::to_string(restarts) +
                          " seeds");
    std::cout << "GDD type " << fourcs::format_gdd_type(gdd.type_signature()) << ": " << gdd.n
              << " points, " << gdd.blocks.size() << " blocks\n";
    if (!emit.empty()) {
        fourcs::store_gdd_file(gdd, emit);
        std::cout << "wrote " << emit << "\n";
    } else {
        fourcs::store_gdd(gdd, std::cout);
    }
    return 0;
}

int cmd_gdd_verify(const std::string& path) {
    const auto gdd = fourcs::load_gdd_file(path); // validates
    std::cout << "valid 4-GDD of type " << fourcs::format_gdd_type(gdd.type_signature()) << ": "
              << gdd.n << " points, " << gdd.groups.size() << " groups, " << gdd.blocks.size()
              << " blocks\n";
    return 0;
}

int cmd_census(const std::string& path, bool as_json, const CommonScanFlags& flags) {
    const auto loaded = fourcs::load_packing_file(path);
    if (auto rep = fourcs::validate_packing(loaded.packing); !rep) {
        std::cerr << "invalid packing: " << rep.detail << "\n";
        return 1;
    }
    const auto c = fourcs::census_pairs(loaded.packing, flags.options());
    if (as_json) {
        json out;
        out["order"] = loaded.packing.order;
        out["cycles"] = loaded.packing.cycles.size();
        out["census"] = census_json(c);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "pairs by class over " << loaded.packing.cycles.size() << " cycles:\n";
        std::cout << "  DoubleDiamond: " << c.double_diamond << "\n";
        std::cout << "  SixTwoOther:   " << c.six_two_other << "\n";
        std::cout << "  SevenTwo:      " << c.seven_two << "\n";
        std::cout << "  EightTwo:      " << c.eight_two << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"4-cycle systems: strictly 4-sparse constructions, configuration scanning, "
                 "and sparse random packings"};
    app.require_subcommand(1);

    CommonScanFlags flags;

    // construct
    auto* construct = app.add_subcommand("construct", "build a strictly 4-sparse 4CS(v)");
    std::uint64_t order = 0;
    std::string route = "auto", gdd_file, emit;
    bool as_json = false;
    fourcs::Vertex certify_limit = 500;
    construct->add_option("--order", order, "order v (must be 1 mod 8)")->required();
    construct->add_option("--route", route, "auto|character|cyclic|composition")
        ->check(CLI::IsMember({"auto", "character", "cyclic", "composition"}));
    construct->add_option("--gdd-file", gdd_file, "explicit GDD for the composition route");
    construct->add_option("--emit", emit, "output file (text format)");
    construct->add_flag("--json", as_json, "JSON summary on stdout");
    construct->add_option("--certify-limit", certify_limit,
                          "run the full strict scan when v <= this (default 500)");
    construct->add_option("--threads", flags.threads, "scan worker threads (0 = all cores)");

    // verify
    auto* verify = app.add_subcommand("verify", "validate and scan a packing/system file");
    std::string verify_path;
    bool with_census = false;
    verify->add_option("file", verify_path, "packing or system file")->required();
    verify->add_option("--r", flags.r, "certify strict r-sparseness (default 4)");
    verify->add_flag("--census", with_census, "also print the pair census");
    verify->add_flag("--json", as_json, "JSON report on stdout");
    verify->add_option("--witness-cap", flags.witness_cap, "stored witnesses per class");
    verify->add_option("--max-r", flags.max_r, "dense-scan ceiling (default 6)");
    verify->add_option("--threads", flags.threads, "scan worker threads (0 = all cores)");

    // pack
    auto* pack = app.add_subcommand("pack", "randomized deletion method packing");
    int pack_r = 4, trials = 1;
    std::uint64_t seed = 0;
    std::string cprime = "1/88";
    pack->add_option("--order", order, "number of vertices")->required();
    pack->add_option("--r", pack_r, "sparseness target (default 4)");
    pack->add_option("--cprime", cprime, "sampling constant as a fraction (default 1/88)");
    auto* seed_opt = pack->add_option("--seed", seed, "master seed (omit for a random one)");
    pack->add_option("--trials", trials, "independent trials (default 1)");
    pack->add_option("--emit", emit, "write the best packing to this file");
    pack->add_flag("--json", as_json, "JSON outcome on stdout");
    pack->add_option("--threads", flags.threads, "trial worker threads (0 = all cores)");

    // gdd find / gdd verify
    auto* gdd = app.add_subcommand("gdd", "group divisible design utilities");
    gdd->require_subcommand(1);
    auto* gdd_find = gdd->add_subcommand("find", "exact-cover search for a 4-GDD");
    std::string type_str;
    std::uint64_t budget = 2'000'000, gdd_seed = 1;
    int restarts = 8;
    gdd_find->add_option("--type", type_str, "type signature, e.g. 2^9,5^1")->required();
    gdd_find->add_option("--seed", gdd_seed, "search seed (default 1)");
    gdd_find->add_option("--budget", budget, "node budget per seed");
    gdd_find->add_option("--restarts", restarts, "seeds to try");
    gdd_find->add_option("--emit", emit, "output file");
    auto* gdd_verify = gdd->add_subcommand("verify", "validate a GDD file");
    std::string gdd_path;
    gdd_verify->add_option("file", gdd_path, "GDD file")->required();

    // census
    auto* census = app.add_subcommand("census", "pair-configuration census of a packing");
    std::string census_path;
    census->add_option("file", census_path, "packing or system file")->required();
    census->add_flag("--json", as_json, "JSON on stdout");
    census->add_option("--threads", flags.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed())
            return cmd_construct(order, route, gdd_file, emit, as_json, certify_limit, flags);
        if (verify->parsed()) return cmd_verify(verify_path, with_census, as_json, flags);
        if (pack->parsed()) {
            flags.r = pack_r;
            return cmd_pack(order, pack_r, cprime, seed, seed_opt->count() > 0, trials, emit,
                            as_json, flags);
        }
        if (gdd_find->parsed()) return cmd_gdd_find(type_str, gdd_seed, budget, restarts, emit);
        if (gdd_verify->parsed()) return cmd_gdd_verify(gdd_path);
        if (census->parsed()) return cmd_census(census_path, as_json, flags);
    } catch (const fourcs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
