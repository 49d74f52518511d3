#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <stabclass/selftest.hpp>
#include <stabclass/stabclass.hpp>

namespace stabclass::cli {

using nlohmann::json;

// Exit codes: 0 success, 1 failed selftest, 2 usage, 3 domain error.
// Every error leaves a machine-readable {"error":{"code","message"}} object
// on stderr; success output is either the JSON envelope (--json) or plain
// text (--table, the default).

namespace detail {

inline Int parse_cli_int(const std::string& opt, const std::string& text) {
    try {
        return parse_int(text);
    } catch (const Error&) {
        throw CLI::ValidationError(opt, "expected a decimal integer, got '" + text + "'");
    }
}

inline std::pair<Int, Int> parse_cli_pair(const std::string& opt, const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw CLI::ValidationError(opt, "expected 'u,v', got '" + text + "'");
    return {parse_cli_int(opt, text.substr(0, comma)),
            parse_cli_int(opt, text.substr(comma + 1))};
}

inline unsigned long parse_cli_index(const std::string& opt, const std::string& text) {
    Int v = parse_cli_int(opt, text);
    if (v < 0 || v > 1000000)
        throw CLI::ValidationError(opt, "index out of range: " + text);
    return v.convert_to<unsigned long>();
}

inline int parse_cli_sign(const std::string& opt, const std::string& text) {
    if (text == "+" || text == "+1") return +1;
    if (text == "-" || text == "-1") return -1;
    throw CLI::ValidationError(opt, "expected + or -, got '" + text + "'");
}

inline std::string pair_str(const Int& x, const Int& y) {
    return "(" + x.str() + "," + y.str() + ")";
}

inline json pair_json(const Int& x, const Int& y) {
    return json::array({x.str(), y.str()});
}

// Options shared by the wall subcommands.  Exactly one of (--alpha, --beta)
// or (--a, --b) must be given; the second pair of a comparison uses the
// suffixed spellings.
struct WallSource {
    std::string alpha, beta, a, b;

    void wire(CLI::App* sub, const std::string& suffix) {
        auto* oa = sub->add_option("--alpha" + suffix, alpha, "first obstruction value");
        auto* ob = sub->add_option("--beta" + suffix, beta, "second obstruction value");
        auto* pa = sub->add_option("--a" + suffix, a, "first coprime-free parameter");
        auto* pb = sub->add_option("--b" + suffix, b, "second coprime-free parameter");
        oa->excludes(pa)->excludes(pb)->needs(ob);
        ob->excludes(pa)->excludes(pb);
        pa->needs(pb);
    }

    WallManifold build(unsigned long m, const std::optional<Int>& bp) const {
        bool direct = !alpha.empty() || !beta.empty();
        bool viaab = !a.empty() || !b.empty();
        if (direct == viaab)
            throw CLI::ValidationError(
                "wall", "give exactly one of --alpha/--beta or --a/--b (one pair per manifold)");
        if (direct)
            return make_wall(m, parse_cli_int("--alpha", alpha), parse_cli_int("--beta", beta),
                             +1, bp);
        return wall_from_ab(m, parse_cli_int("--a", a), parse_cli_int("--b", b), bp);
    }
};

struct Output {
    json command = json::object();
    json result = json::object();
    json provenance = json::object();
    std::string table;
    int exit_code = 0;
};

inline void wall_provenance(json& prov, const WallManifold& w) {
    const DimensionData& dd = dimension_data(w.m);
    prov["m"] = w.m;
    prov["j"] = dd.j.str();
    prov["c"] = dd.c.str();
    prov["bp"] = effective_bp(w).str();
    prov["bp_source"] = w.bp_override ? "override" : "default";
}

} // namespace detail

/// Parse and execute one invocation.  Streams receive what the process would
/// print; the return value is the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"exact classification invariants of highly connected manifolds", "stabclass"};
    app.require_subcommand(1);
    bool want_json = false, want_table = false;
    app.add_flag("--json", want_json, "emit the JSON envelope");
    app.add_flag("--table", want_table, "emit plain text (default)");

    Output o;
    auto echo = [&o](const CLI::App* sub) {
        const CLI::App* parent = sub->get_parent();
        bool nested = parent->get_parent() != nullptr;
        o.command["verb"] = nested ? parent->get_name() : sub->get_name();
        if (nested) o.command["subcommand"] = sub->get_name();
        json flags = json::object();
        for (const CLI::Option* opt : sub->get_options())
            if (opt->count() > 0 && !opt->get_lnames().empty()) {
                if (opt->get_expected_min() == 0)
                    flags[opt->get_lnames().front()] = true;
                else
                    flags[opt->get_lnames().front()] = opt->results().front();
            }
        o.command["options"] = std::move(flags);
    };

    // ---- bernoulli ----
    {
        auto* sub = app.add_subcommand("bernoulli", "exact Bernoulli value, library indexing");
        auto n = std::make_shared<std::string>();
        sub->add_option("--n", *n, "index, 1-based")->required();
        sub->callback([&o, &echo, sub, n] {
            echo(sub);
            Rat b = bernoulli_paper(parse_cli_index("--n", *n));
            o.result["num"] = num(b).str();
            o.result["den"] = den(b).str();
            o.table = num(b).str() + "/" + den(b).str();
        });
    }

    // ---- j-order ----
    {
        auto* sub = app.add_subcommand("j-order", "order of the cyclic J-image in dimension 4m-1");
        auto m = std::make_shared<std::string>();
        sub->add_option("--m", *m, "dimension index")->required();
        sub->callback([&o, &echo, sub, m] {
            echo(sub);
            unsigned long mm = parse_cli_index("--m", *m);
            Int j = j_order(mm);
            o.result["value"] = j.str();
            o.provenance["m"] = mm;
            o.table = j.str();
        });
    }

    // ---- bp-order ----
    {
        auto* sub = app.add_subcommand("bp-order",
                                       "order of the boundary-sphere group in dimension 8m-1");
        auto m = std::make_shared<std::string>();
        sub->add_option("--m", *m, "dimension index")->required();
        sub->callback([&o, &echo, sub, m] {
            echo(sub);
            unsigned long mm = parse_cli_index("--m", *m);
            Int v = bp8_order(mm);
            o.result["value"] = v.str();
            o.provenance["m"] = mm;
            o.table = v.str();
        });
    }

    // ---- wall ----
    {
        auto* wall = app.add_subcommand("wall", "(8m-1)-connected 8m-manifolds with boundary");
        wall->require_subcommand(1);

        struct WallOpts {
            std::string m, bp, relation;
            WallSource first, second;
        };
        auto wo = std::make_shared<WallOpts>();

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--m", wo->m, "dimension index")->required();
            wo->first.wire(sub, "");
            sub->add_option("--bp", wo->bp, "override the boundary-sphere modulus");
        };
        auto build_first = [wo] {
            std::optional<Int> bp;
            if (!wo->bp.empty()) bp = parse_cli_int("--bp", wo->bp);
            return wo->first.build(parse_cli_index("--m", wo->m), bp);
        };

        {
            auto* sub = wall->add_subcommand("invariants", "gcd, signature, characteristic square");
            add_common(sub);
            sub->callback([&o, &echo, sub, build_first] {
                echo(sub);
                WallManifold w = build_first();
                WallInvariants inv = wall_invariants(w);
                o.result["d"] = inv.d.str();
                o.result["sigma"] = inv.sigma.str();
                o.result["salpha_sq"] = inv.salpha_sq.str();
                wall_provenance(o.provenance, w);
                o.table = "d          " + inv.d.str() + "\nsigma      " + inv.sigma.str() +
                          "\nsalpha_sq  " + inv.salpha_sq.str();
            });
        }
        {
            auto* sub = wall->add_subcommand("compare", "test one of the three equivalences");
            add_common(sub);
            wo->second.wire(sub, "2");
            sub->add_option("--relation", wo->relation, "homotopy | almost-diffeo | stable")
                ->required()
                ->check(CLI::IsMember({"homotopy", "almost-diffeo", "stable"}));
            sub->callback([&o, &echo, sub, wo] {
                echo(sub);
                std::optional<Int> bp;
                if (!wo->bp.empty()) bp = parse_cli_int("--bp", wo->bp);
                unsigned long mm = parse_cli_index("--m", wo->m);
                WallManifold w1 = wo->first.build(mm, bp);
                WallManifold w2 = wo->second.build(mm, bp);
                bool eq = wo->relation == "homotopy"        ? homotopy_equivalent(w1, w2)
                          : wo->relation == "almost-diffeo" ? almost_diffeomorphic(w1, w2)
                                                            : stably_almost_diffeomorphic(w1, w2);
                o.result["relation"] = wo->relation;
                o.result["equivalent"] = eq;
                wall_provenance(o.provenance, w1);
                o.provenance["d1"] = wall_invariants(w1).d.str();
                o.provenance["d2"] = wall_invariants(w2).d.str();
                o.table = eq ? "equivalent" : "not equivalent";
            });
        }
        {
            auto* sub = wall->add_subcommand("enumerate", "stable class and homotopy family");
            add_common(sub);
            sub->callback([&o, &echo, sub, build_first] {
                echo(sub);
                StableClassReport r = enumerate_stable_class(build_first());
                o.result["d"] = r.d.str();
                o.result["A"] = r.A.str();
                o.result["count_stable_mod_spheres"] = r.count_stable_mod_spheres.str();
                o.result["members"] = json::array();
                for (const auto& mem : r.members)
                    o.result["members"].push_back(pair_json(mem.alpha, mem.beta));
                o.result["homotopy_family"] = json::array();
                for (const auto& mem : r.homotopy_family)
                    o.result["homotopy_family"].push_back(pair_json(mem.alpha, mem.beta));
                o.result["homotopy_lower"] = r.homotopy_lower.str();
                o.result["homotopy_upper"] = r.homotopy_upper.str();
                wall_provenance(o.provenance, r.base);
                o.provenance["d"] = r.d.str();
                o.provenance["A"] = r.A.str();
                o.provenance["A_prime"] = r.A_prime.str();
                o.provenance["d_prime"] = r.d_prime.str();
                o.provenance["jbar"] = r.jbar.str();
                std::string members, family;
                for (const auto& mem : r.members)
                    members += (members.empty() ? "" : " ") + pair_str(mem.alpha, mem.beta);
                for (const auto& mem : r.homotopy_family)
                    family += (family.empty() ? "" : " ") + pair_str(mem.alpha, mem.beta);
                o.table = "d                " + r.d.str() + "\nA                " + r.A.str() +
                          "\nstable count     " + r.count_stable_mod_spheres.str() +
                          "\nmembers          " + members + "\nhomotopy family  " + family +
                          "\nhomotopy bounds  [" + r.homotopy_lower.str() + ", " +
                          r.homotopy_upper.str() + "]";
            });
        }
        {
            auto* sub = wall->add_subcommand("bounds", "stable count and homotopy-class bounds");
            add_common(sub);
            sub->callback([&o, &echo, sub, build_first] {
                echo(sub);
                StableClassReport r = enumerate_stable_class(build_first());
                o.result["lower"] = r.homotopy_lower.str();
                o.result["upper"] = r.homotopy_upper.str();
                o.result["stable_count"] = r.count_stable_mod_spheres.str();
                wall_provenance(o.provenance, r.base);
                o.provenance["d"] = r.d.str();
                o.provenance["A"] = r.A.str();
                o.provenance["jbar"] = r.jbar.str();
                o.table = "lower         " + r.homotopy_lower.str() + "\nupper         " +
                          r.homotopy_upper.str() + "\nstable count  " +
                          r.count_stable_mod_spheres.str();
            });
        }
    }

    // ---- n4k ----
    {
        auto* n4k = app.add_subcommand("n4k", "2k-connected 4k-manifolds from coprime pairs");
        n4k->require_subcommand(1);
        struct N4kOpts {
            std::string k, product, n, pair1, pair2, relation;
        };
        auto no = std::make_shared<N4kOpts>();

        {
            auto* sub = n4k->add_subcommand("enumerate", "one manifold per coprime splitting");
            sub->add_option("--k", no->k, "dimension index")->required();
            sub->add_option("--product", no->product, "value of ab")->required();
            sub->callback([&o, &echo, sub, no] {
                echo(sub);
                unsigned long k = parse_cli_index("--k", no->k);
                Int product = parse_cli_int("--product", no->product);
                auto reps = n4k_enumerate_stable_class(k, product);
                o.result["product"] = product.str();
                o.result["count"] = std::to_string(reps.size());
                o.result["members"] = json::array();
                std::string table;
                for (const auto& r : reps) {
                    o.result["members"].push_back(pair_json(r.a, r.b));
                    table += (table.empty() ? "" : " ") + pair_str(r.a, r.b);
                }
                o.provenance["k"] = k;
                o.table = table;
            });
        }
        {
            auto* sub = n4k->add_subcommand("witness",
                                            "a stable class with at least n homotopy types");
            sub->add_option("--k", no->k, "dimension index")->required();
            sub->add_option("--n", no->n, "requested number of homotopy types")->required();
            sub->callback([&o, &echo, sub, no] {
                echo(sub);
                unsigned long k = parse_cli_index("--k", no->k);
                WitnessFamily fam = n4k_witness_family(k, parse_cli_int("--n", no->n));
                o.result["product"] = fam.product.str();
                o.result["count"] = std::to_string(fam.members.size());
                o.result["members"] = json::array();
                std::string table = "product " + fam.product.str() + ":";
                for (const auto& r : fam.members) {
                    o.result["members"].push_back(pair_json(r.a, r.b));
                    table += " " + pair_str(r.a, r.b);
                }
                o.provenance["k"] = k;
                o.table = table;
            });
        }
        {
            auto* sub = n4k->add_subcommand("compare", "homotopy or stable comparison");
            sub->add_option("--k", no->k, "dimension index")->required();
            sub->add_option("--pair1", no->pair1, "first manifold as a,b")->required();
            sub->add_option("--pair2", no->pair2, "second manifold as a,b")->required();
            sub->add_option("--relation", no->relation, "homotopy | stable")
                ->required()
                ->check(CLI::IsMember({"homotopy", "stable"}));
            sub->callback([&o, &echo, sub, no] {
                echo(sub);
                unsigned long k = parse_cli_index("--k", no->k);
                auto [a1, b1] = parse_cli_pair("--pair1", no->pair1);
                auto [a2, b2] = parse_cli_pair("--pair2", no->pair2);
                FourKManifold m1 = make_n4k(k, a1, b1), m2 = make_n4k(k, a2, b2);
                bool eq = no->relation == "homotopy" ? n4k_homotopy_equivalent(m1, m2)
                                                     : n4k_stably_diffeomorphic(m1, m2);
                o.result["relation"] = no->relation;
                o.result["equivalent"] = eq;
                o.provenance["k"] = k;
                o.table = eq ? "equivalent" : "not equivalent";
            });
        }
    }

    // ---- spinc ----
    {
        auto* spinc = app.add_subcommand("spinc", "spin-c structures on the product of 2-spheres");
        spinc->require_subcommand(1);
        struct SpincOpts {
            std::string c1sq, s1, s2, relation;
        };
        auto so = std::make_shared<SpincOpts>();

        auto emit_list = [&o](const Int& C, const std::vector<SpinCClass>& cs) {
            o.result["c1sq"] = C.str();
            o.result["count"] = std::to_string(cs.size());
            o.result["members"] = json::array();
            std::string table;
            for (const auto& s : cs) {
                o.result["members"].push_back(pair_json(s.z1, s.z2));
                table += (table.empty() ? "" : " ") + pair_str(s.z1, s.z2);
            }
            o.provenance["Q"] = Int(C / 8).str();
            o.table = table;
        };

        {
            auto* sub = spinc->add_subcommand(
                "census", "coprime representatives: stably equivalent, pairwise distinct");
            sub->add_option("--c1sq", so->c1sq, "characteristic square")->required();
            sub->callback([&o, &echo, sub, so, emit_list] {
                echo(sub);
                Int C = parse_cli_int("--c1sq", so->c1sq);
                emit_list(C, spinc_census(C));
            });
        }
        {
            auto* sub = spinc->add_subcommand("orbits", "all isometry orbits with that square");
            sub->add_option("--c1sq", so->c1sq, "characteristic square")->required();
            sub->callback([&o, &echo, sub, so, emit_list] {
                echo(sub);
                Int C = parse_cli_int("--c1sq", so->c1sq);
                emit_list(C, spinc_all_orbits(C));
            });
        }
        {
            auto* sub = spinc->add_subcommand("compare", "equivalence or stable equivalence");
            sub->add_option("--s1", so->s1, "first structure as z1,z2")->required();
            sub->add_option("--s2", so->s2, "second structure as z1,z2")->required();
            sub->add_option("--relation", so->relation, "equiv | stable")
                ->required()
                ->check(CLI::IsMember({"equiv", "stable"}));
            sub->callback([&o, &echo, sub, so] {
                echo(sub);
                auto [x1, y1] = parse_cli_pair("--s1", so->s1);
                auto [x2, y2] = parse_cli_pair("--s2", so->s2);
                SpinCClass a = make_spinc(x1, y1), b = make_spinc(x2, y2);
                bool eq = so->relation == "equiv" ? spinc_equivalent(a, b)
                                                  : spinc_stably_equivalent(a, b);
                o.result["relation"] = so->relation;
                o.result["equivalent"] = eq;
                o.table = eq ? "equivalent" : "not equivalent";
            });
        }
    }

    // ---- form ----
    {
        auto* form = app.add_subcommand("form", "extended symmetric forms on the hyperbolic lattice");
        form->require_subcommand(1);
        struct FormOpts {
            std::string sign1, sign2, f1, f2, modulus;
            bool reversal = false;
        };
        auto fo = std::make_shared<FormOpts>();
        auto* sub = form->add_subcommand("equiv", "equivalence of two marked forms");
        sub->add_option("--sign1", fo->sign1, "sign of the first form: + or -")->required();
        sub->add_option("--f1", fo->f1, "first marking as u,v")->required();
        sub->add_option("--sign2", fo->sign2, "sign of the second form: + or -")->required();
        sub->add_option("--f2", fo->f2, "second marking as u,v")->required();
        sub->add_option("--modulus", fo->modulus, "marking modulus, 0 for integer markings")
            ->required();
        sub->add_flag("--reversal", fo->reversal, "allow sign-reversing isometries");
        sub->callback([&o, &echo, sub, fo] {
            echo(sub);
            Int modulus = parse_cli_int("--modulus", fo->modulus);
            auto [u1, v1] = parse_cli_pair("--f1", fo->f1);
            auto [u2, v2] = parse_cli_pair("--f2", fo->f2);
            ExtSymForm e1 =
                make_form(parse_cli_sign("--sign1", fo->sign1), modulus, u1, v1, false);
            ExtSymForm e2 =
                make_form(parse_cli_sign("--sign2", fo->sign2), modulus, u2, v2, false);
            bool eq = fo->reversal ? unoriented_equivalent(e1, e2) : oriented_equivalent(e1, e2);
            o.result["equivalent"] = eq;
            o.provenance["modulus"] = modulus.str();
            o.table = eq ? "equivalent" : "not equivalent";
        });
    }

    // ---- oracle ----
    {
        auto* oracle = app.add_subcommand("oracle", "independent cross-check routes");
        oracle->require_subcommand(1);
        auto modulus = std::make_shared<std::string>();
        auto* sub = oracle->add_subcommand("orbit-count",
                                           "pair orbits by exhaustive enumeration");
        sub->add_option("--modulus", *modulus, "pair entries range over Z/modulus")->required();
        sub->callback([&o, &echo, sub, modulus] {
            echo(sub);
            Int n = parse_cli_int("--modulus", *modulus);
            Int brute = orbit_count_pairs_bruteforce(n);
            o.result["modulus"] = n.str();
            o.result["orbits"] = brute.str();
            o.result["formula"] = orbit_count_pairs_formula(n).str();
            o.table = brute.str();
        });
    }

    // ---- selftest ----
    {
        auto* sub = app.add_subcommand("selftest", "run the bundled acceptance checks");
        sub->callback([&o, &echo, sub] {
            echo(sub);
            auto results = run_selftest();
            bool all = true;
            json checks = json::array();
            std::ostringstream table;
            for (const auto& r : results) {
                all = all && r.passed;
                checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
                table << (r.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(36)
                      << r.name << std::right << std::setw(9) << std::fixed
                      << std::setprecision(2) << r.ms << " ms";
                if (!r.passed) table << "  " << r.detail;
                table << "\n";
            }
            std::size_t failed = 0;
            for (const auto& r : results)
                if (!r.passed) ++failed;
            table << (all ? "all checks passed"
                          : std::to_string(failed) + " check(s) failed");
            o.result["passed"] = all;
            o.result["checks"] = std::move(checks);
            o.table = table.str();
            if (!all) o.exit_code = 1;
        });
    }

    // Lets a trailing --json or --table reach the top-level app from any depth.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
        for (auto* sub : node->get_subcommands(nullptr)) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        err << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
        return 1;
    }

    if (want_json && want_table) {
        err << json{{"error", {{"code", "usage"}, {"message", "--json and --table exclude each other"}}}}
                   .dump(2)
            << "\n";
        return 2;
    }
    if (want_json) {
        json envelope;
        envelope["schema_version"] = "1";
        envelope["command"] = o.command;
        envelope["result"] = o.result;
        envelope["provenance"] = o.provenance;
        out << envelope.dump(2) << "\n";
    } else {
        out << o.table << "\n";
    }
    return o.exit_code;
}

} // namespace stabclass::cli
