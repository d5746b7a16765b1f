#ifndef SERRE_CLI_HPP
#define SERRE_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "serre/json_io.hpp"

namespace serre::cli {

struct UsageErr : std::runtime_error {
    explicit UsageErr(const std::string& m) : std::runtime_error(m) {}
};

namespace detail {

inline std::string pad(const std::string& s, size_t width) {
    return s + std::string(s.size() < width ? width - s.size() : 0, ' ');
}

inline void print_multiset_table(std::ostream& out, const WeightMultiset& m) {
    size_t wcol = 6;
    for (const auto& [s, mult] : m) wcol = std::max(wcol, weight_name(s).size());
    out << pad("weight", wcol) << "  mult  dim\n";
    for (const auto& [s, mult] : m)
        out << pad(weight_name(s), wcol) << "  " << pad(std::to_string(mult), 4) << "  "
            << weight_dim(s) << "\n";
}

inline std::string witness_string(const WitnessAssignment& w) {
    auto vec = [](const auto& v) {
        std::string s = "[";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    };
    std::string s = "A=" + vec(w.A) + " delta=" + vec(w.delta);
    if (w.has_lifts) s += " lifts=" + vec(w.lifts);
    return s;
}

inline std::string datum_string(const InertialDatum& d) {
    if (d.kind == InertialDatum::Irreducible)
        return std::string(case_name(d.kind)) + "(" + d.phi.exponent.to_string() + ")";
    return std::string(case_name(d.kind)) + "(" + d.chi1.exponent.to_string() + "," +
           d.chi2.exponent.to_string() + ")";
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations with Serre weights, tame characters, conductors, "
                 "and the mod-p GL2(Qp) correspondence"};
    app.name("serre");
    app.require_subcommand(0, 1);

    std::string inline_json, file_path, format = "table";
    bool witnesses = false, verbose = false;
    long long p = 0, m = -1, n = 0, q = 0, dim = 0, lambda = 1, e = 1, f = 1;
    long long r = 0, w = 0, radius = 0, budget = 200;
    std::string case_str;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--inline", inline_json, "inline JSON input");
        s->add_option("--file", file_path, "path to a JSON input file");
        s->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json"}));
        s->add_flag("--verbose", verbose, "include convention metadata in table output");
    };

    CLI::App* c_weights = app.add_subcommand("weights", "local weight set of an inertial datum");
    add_common(c_weights);
    c_weights->add_flag("--witnesses", witnesses, "include the (A, delta, lifts) witnesses");

    CLI::App* c_global = app.add_subcommand("global-weights", "product weight set over places");
    add_common(c_global);

    CLI::App* c_minwt = app.add_subcommand("min-weight", "minimal k >= 2 for e = f = 1 data");
    add_common(c_minwt);

    CLI::App* c_cond = app.add_subcommand("conductor", "conductor exponent from a filtration");
    add_common(c_cond);

    CLI::App* c_level = app.add_subcommand("level", "prime-to-p conductor level");
    add_common(c_level);

    CLI::App* c_jhsym = app.add_subcommand("jh-sym", "constituents of Sym^m in char p");
    add_common(c_jhsym);
    c_jhsym->add_option("--p", p, "prime");
    c_jhsym->add_option("--m", m, "symmetric power");

    CLI::App* c_jhps = app.add_subcommand("jh-ps", "constituents of a principal series");
    add_common(c_jhps);

    CLI::App* c_llc = app.add_subcommand("llc", "weight pair of an irreducible datum at Qp");
    add_common(c_llc);
    c_llc->add_option("--p", p, "prime");
    c_llc->add_option("--n", n, "niveau-2 exponent");

    CLI::App* c_classify = app.add_subcommand("classify", "Hecke quotient classification");
    add_common(c_classify);
    c_classify->add_option("--q", q, "residue field size");
    c_classify->add_option("--dim", dim, "weight dimension");
    c_classify->add_option("--lambda", lambda, "Hecke eigenvalue mod p");

    CLI::App* c_hecke = app.add_subcommand("hecke-dim", "I(1)-invariants of ind/T ind");
    add_common(c_hecke);
    c_hecke->add_option("--p", p, "prime");
    c_hecke->add_option("--r", r, "symmetric power");
    c_hecke->add_option("--w", w, "determinant twist");
    c_hecke->add_option("--radius", radius, "truncation radius");

    CLI::App* c_enum = app.add_subcommand("enumerate", "all inertial data of one case");
    add_common(c_enum);
    c_enum->add_option("--p", p, "prime");
    c_enum->add_option("--e", e, "ramification index");
    c_enum->add_option("--f", f, "residue degree");
    c_enum->add_option("--case", case_str, "reducible_split | irreducible | indecomposable");
    c_enum->add_option("--budget", budget, "bound on q^2 (default 200)");

    std::vector<const char*> argv;
    argv.push_back("serre");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "usage error: " << ex.what() << "\n";
        err << app.help();
        return 64;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return 64;
    }
    CLI::App* sub = app.get_subcommands().front();

    auto load_input = [&]() -> json {
        if (!inline_json.empty() && !file_path.empty())
            throw UsageErr("give either --inline or --file, not both");
        if (!inline_json.empty()) return json::parse(inline_json);
        if (!file_path.empty()) {
            std::ifstream in(file_path);
            if (!in) throw ValidationError("cannot open input file: " + file_path);
            return json::parse(in);
        }
        return json();
    };
    auto required_input = [&]() {
        json j = load_input();
        if (j.is_null()) throw UsageErr("this subcommand needs --inline or --file");
        return j;
    };
    auto emit = [&](const json& payload, const std::string& table) {
        if (format == "json")
            out << payload.dump() << "\n";
        else
            out << table;
    };

    try {
        if (sub == c_weights) {
            InertialDatum d = datum_from_json(required_input());
            LocalWeightSet ws = weights_local(d);
            std::ostringstream t;
            for (const auto& en : ws.entries) {
                t << weight_name(en.weight);
                if (witnesses) t << "  " << detail::witness_string(en.witness);
                t << "\n";
            }
            t << "exact: " << (ws.exact ? "true" : "false") << "\n";
            emit(local_weight_set_to_json(ws, witnesses), t.str());
        } else if (sub == c_global) {
            GlobalDatum g = global_datum_from_json(required_input());
            GlobalWeightSet gw = weights_global(g);
            std::ostringstream t;
            for (const auto& tup : gw.tuples) {
                for (size_t i = 0; i < tup.size(); ++i)
                    t << (i ? " (x) " : "") << weight_name(tup[i]);
                t << "\n";
            }
            t << "exact: " << (gw.exact ? "true" : "false") << "\n";
            emit(global_weight_set_to_json(gw), t.str());
        } else if (sub == c_minwt) {
            InertialDatum d = datum_from_json(required_input());
            long long k = minimal_weight(d);
            emit(json{{"k", k}}, "k = " + std::to_string(k) + "\n");
        } else if (sub == c_cond) {
            ConductorReport rep = conductor_exponent(filtration_from_json(required_input()));
            std::ostringstream t;
            t << "a_v = " << rep.a_v << "\n";
            t << "terms = [";
            for (size_t i = 0; i < rep.terms.size(); ++i)
                t << (i ? ", " : "") << rep.terms[i].to_string();
            t << "]\n";
            emit(conductor_report_to_json(rep), t.str());
        } else if (sub == c_level) {
            json j = required_input();
            long long pp = j.at("p").get<long long>();
            LevelReport rep = level(pp, level_entries_from_json(j));
            std::ostringstream t;
            t << "factors:";
            if (rep.factors.empty()) t << " (1)";
            for (const auto& fac : rep.factors) {
                t << " " << fac.place_label;
                if (fac.exponent != 1) t << "^" << fac.exponent;
            }
            t << "\nnorm = " << rep.norm.to_string() << "\n";
            if (verbose)
                for (const auto& fac : rep.factors) {
                    U1Descriptor u1 = u1_descriptor(fac.place_label, fac.exponent);
                    t << "# " << u1.group << ":";
                    for (size_t i = 0; i < u1.conditions.size(); ++i)
                        t << (i ? ", " : " ") << u1.conditions[i];
                    t << "\n";
                }
            emit(level_report_to_json(rep), t.str());
        } else if (sub == c_jhsym) {
            json j = load_input();
            if (!j.is_null()) {
                p = j.at("p").get<long long>();
                m = j.at("m").get<long long>();
            } else if (sub->count("--p") == 0 || sub->count("--m") == 0) {
                throw UsageErr("jh-sym needs --p and --m (or JSON input)");
            }
            WeightMultiset ms = jh_sym(p, m);
            std::ostringstream t;
            detail::print_multiset_table(t, ms);
            emit(multiset_to_json(ms), t.str());
        } else if (sub == c_jhps) {
            json j = required_input();
            LocalPlace place = place_from_json(j.at("place"));
            TameCharacter chi1 = character_from_json(place, j.at("chi1"));
            TameCharacter chi2 = character_from_json(place, j.at("chi2"));
            WeightMultiset ms = jh_principal_series(chi1, chi2);
            std::ostringstream t;
            detail::print_multiset_table(t, ms);
            if (verbose) {
                BrauerMetadata md = brauer_metadata(place);
                t << "# eigenvalue field F_q^2 presented by " << md.field_poly
                  << ", generator " << md.generator << "\n";
            }
            emit(multiset_to_json(ms), t.str());
        } else if (sub == c_llc) {
            json j = load_input();
            if (!j.is_null()) {
                p = j.at("p").get<long long>();
                n = j.at("n").get<long long>();
            } else if (sub->count("--p") == 0 || sub->count("--n") == 0) {
                throw UsageErr("llc needs --p and --n (or JSON input)");
            }
            LlcResult res = llc_weights(p, BigInt(n));
            std::ostringstream t;
            t << "sigma:  " << weight_name(res.sigma) << "\n";
            t << "sigma': " << weight_name(res.sigma_prime) << "\n";
            t << "pi: " << res.pi_label << "\n";
            emit(llc_result_to_json(res), t.str());
        } else if (sub == c_classify) {
            json j = load_input();
            if (!j.is_null()) {
                q = j.at("q").get<long long>();
                dim = j.at("dim").get<long long>();
                lambda = j.at("lambda").get<long long>();
            } else if (sub->count("--q") == 0 || sub->count("--dim") == 0) {
                throw UsageErr("classify needs --q, --dim, --lambda (or JSON input)");
            }
            std::string label = bl_classify(q, dim, lambda);
            emit(json{{"label", label}}, label + "\n");
        } else if (sub == c_hecke) {
            json j = load_input();
            if (!j.is_null()) {
                p = j.at("p").get<long long>();
                r = j.at("r").get<long long>();
                w = j.at("w").get<long long>();
                radius = j.at("radius").get<long long>();
            } else if (sub->count("--p") == 0 || sub->count("--radius") == 0) {
                throw UsageErr("hecke-dim needs --p, --r, --w, --radius (or JSON input)");
            }
            CokerResult res = coker_I1_dimension(p, static_cast<int>(r),
                                                 static_cast<int>(w), radius);
            std::ostringstream t;
            t << "dim = " << res.dim << "\n";
            t << "stabilized: " << (res.stabilized ? "true" : "false") << "\n";
            if (verbose) t << "# coefficient field: " << res.coefficient_field << "\n";
            emit(coker_result_to_json(res), t.str());
        } else if (sub == c_enum) {
            json j = load_input();
            if (!j.is_null()) {
                p = j.at("p").get<long long>();
                e = j.value("e", 1LL);
                f = j.value("f", 1LL);
                case_str = j.at("case").get<std::string>();
                if (j.contains("budget")) budget = j.at("budget").get<long long>();
            } else if (sub->count("--p") == 0 || sub->count("--case") == 0) {
                throw UsageErr("enumerate needs --p and --case (or JSON input)");
            }
            LocalPlace place = make_place(p, e, f);
            BigInt q2 = place.q * place.q;
            if (q2 > BigInt(budget))
                throw ValidationError("enumerate: q^2 = " + q2.to_string() +
                                      " exceeds the budget " + std::to_string(budget));
            InertialDatum::Case kind;
            if (case_str == "reducible_split") kind = InertialDatum::ReducibleSplit;
            else if (case_str == "irreducible") kind = InertialDatum::Irreducible;
            else if (case_str == "indecomposable") kind = InertialDatum::Indecomposable;
            else throw ValidationError("enumerate: unknown case \"" + case_str + "\"");
            json rows = json::array();
            std::ostringstream t;
            for (const InertialDatum& d : enumerate_data(place, kind)) {
                LocalWeightSet ws = weights_local(d);
                json row;
                row["datum"] = datum_to_json(d);
                row["weights"] = json::array();
                t << detail::datum_string(d) << ":";
                for (size_t i = 0; i < ws.entries.size(); ++i) {
                    row["weights"].push_back(weight_to_json(ws.entries[i].weight));
                    t << (i ? ", " : " ") << weight_name(ws.entries[i].weight);
                }
                row["exact"] = ws.exact;
                if (!ws.exact) t << "  (superset)";
                t << "\n";
                rows.push_back(std::move(row));
            }
            emit(rows, t.str());
        }
        return 0;
    } catch (const UsageErr& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 64;
    } catch (const json::exception& ex) {
        err << "input error: " << ex.what() << "\n";
        return 2;
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::overflow_error& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace serre::cli

#endif
