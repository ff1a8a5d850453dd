// perplex: generate, transform, and analyze perfect complexes over the
// supported exact coefficient rings, plus the two end-to-end demos.
//
// Exit codes: 0 success/certified, 1 mathematical refusal or violation,
// 2 usage or capability errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "perplex/demo.hpp"
#include "perplex/serialize.hpp"

namespace {

using namespace perplex;

void write_output(const std::string& path, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw error("cannot open output file: " + path);
    out << text;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::exception& e) {
        throw parse_error(std::string("bad JSON in ") + path + ": " + e.what());
    }
}

/// Accepts both a bare complex and a planted-decomposition file.
ChainComplex load_complex(const std::string& path, bool check) {
    const Json j = read_json_file(path);
    if (j.is_object() && j.contains("complex")) return complex_from_json(j["complex"], check);
    return complex_from_json(j, check);
}

/// Plan grammar: "(deg,f)" for a free summand, "(deg,cN)" for a cyclic one
/// with integer differential N, "(deg,c a0:a1:...)" with coefficients in
/// ascending degree over GF(p)[x]. Entries joined by commas.
std::vector<SummandSpec> parse_plan(const Ring& ring, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    std::vector<SummandSpec> plan;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] == ',') { ++pos; continue; }
        if (s[pos] != '(') throw parse_error("plan entry must start with '(': " + text);
        const std::size_t close = s.find(')', pos);
        if (close == std::string::npos) throw parse_error("unbalanced plan entry: " + text);
        const std::string entry = s.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        const std::size_t comma = entry.find(',');
        if (comma == std::string::npos) throw parse_error("plan entry needs (degree,kind): " + entry);
        SummandSpec spec;
        try {
            spec.end_degree = std::stoi(entry.substr(0, comma));
        } catch (const std::exception&) {
            throw parse_error("bad degree in plan entry: " + entry);
        }
        const std::string kind = entry.substr(comma + 1);
        if (kind == "f") {
            spec.cyclic = false;
            spec.d = RElem::zero(ring);
        } else if (!kind.empty() && kind[0] == 'c') {
            spec.cyclic = true;
            const std::string body = kind.substr(1);
            if (ring.kind() == RingKind::univariate_poly && ring.p() != 0) {
                Poly f(1, ring.p());
                int deg = 0;
                std::stringstream ss(body);
                std::string coef;
                while (std::getline(ss, coef, ':')) {
                    const Scalar c = Scalar::parse(coef, ring.p());
                    if (!c.is_zero()) f = f + Poly::monomial(1, Exps{deg}, c);
                    ++deg;
                }
                spec.d = RElem::of_poly(ring, f);
            } else {
                const Scalar c = Scalar::parse(body, 0);
                if (denominator(c.rat()) != 1) throw parse_error("cyclic differential must be an integer");
                spec.d = RElem::from_integer(ring, numerator(c.rat()));
            }
        } else {
            throw parse_error("unknown plan kind (want f or c...): " + entry);
        }
        plan.push_back(std::move(spec));
    }
    if (plan.empty()) throw parse_error("empty plan: " + text);
    return plan;
}

std::string ranks_line(const std::map<int, int>& ranks) {
    if (ranks.empty()) return "(empty)";
    std::string out;
    for (const auto& [deg, r] : ranks) {
        if (!out.empty()) out += " ";
        out += std::to_string(deg) + ":" + std::to_string(r);
    }
    return out;
}

int cmd_validate(const std::string& path, bool no_check, bool json) {
    const ChainComplex c = load_complex(path, false);
    if (no_check) {
        // --no-check: parsing alone, shape-level only
        if (json) std::cout << Json{{"ok", true}, {"checked", false}}.dump(2) << "\n";
        else std::cout << "parsed (d.d = 0 not checked)\n";
        return 0;
    }
    const ValidationResult vr = validate(c);
    if (json) {
        Json j{{"ok", vr.ok}, {"checked", true}};
        if (!vr.ok) {
            j["message"] = vr.message;
            j["degree"] = vr.degree;
            j["row"] = vr.row;
            j["col"] = vr.col;
        }
        std::cout << j.dump(2) << "\n";
    } else if (vr.ok) {
        std::cout << "ok\n";
    } else {
        std::cout << "violation at degree " << vr.degree << ": " << vr.message << "\n";
    }
    return vr.ok ? 0 : 1;
}

int cmd_minimize(const std::string& path, bool json) {
    const ChainComplex c = load_complex(path, true);
    const MinimizationResult r = minimize(c);
    if (json) {
        Json j{{"transcript", transcript_to_json(r.transcript)},
               {"complex", complex_to_json(r.complex)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ranks before: " << ranks_line(r.transcript.initial_ranks) << "\n";
        std::cout << "ranks after:  " << ranks_line(r.transcript.final_ranks) << "\n";
        std::cout << "split-off steps: " << r.transcript.steps.size() << "\n";
    }
    return 0;
}

int cmd_width(const std::string& path, bool json) {
    const ChainComplex c = load_complex(path, true);
    const auto w = width(c);
    if (json)
        std::cout << Json{{"width", w ? Json(*w) : Json("empty")}}.dump(2) << "\n";
    else
        std::cout << "width: " << (w ? std::to_string(*w) : std::string("empty")) << "\n";
    return 0;
}

int cmd_cohomology(const std::string& path, bool json) {
    const ChainComplex c = load_complex(path, true);
    const CohomologyReport r = cohomology(c);
    if (json) {
        std::cout << cohomology_to_json(r).dump(2) << "\n";
        return 0;
    }
    if (r.entries.empty()) {
        std::cout << "acyclic (all cohomology vanishes)\n";
        return 0;
    }
    for (const auto& [deg, e] : r.entries) {
        std::cout << "H^" << deg << ": free rank " << e.free_rank;
        if (!e.invariant_factors.empty()) {
            std::cout << ", invariant factors [";
            for (std::size_t i = 0; i < e.invariant_factors.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << e.invariant_factors[i].str();
            }
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_decompose(const std::string& path, const std::string& refine, bool json) {
    const ChainComplex c = load_complex(path, true);
    DecompositionReport report = decompose(c);
    if (refine == "primary") {
        const RefineOutcome outcome = primary_refine(report);
        if (!outcome.refined) {
            if (json)
                std::cout << Json{{"refused", outcome.refusal_reason},
                                  {"report", decomposition_to_json(report)}}.dump(2)
                          << "\n";
            else
                std::cout << "refined refusal: " << outcome.refusal_reason << "\n";
            return 1;
        }
        report = outcome.report;
    }
    if (json) {
        std::cout << decomposition_to_json(report).dump(2) << "\n";
        return 0;
    }
    std::cout << "refinement: "
              << (report.refinement == Refinement::primary ? "primary" : "invariant_factor") << "\n";
    if (report.summands.empty()) std::cout << "(empty: acyclic complex)\n";
    for (const auto& s : report.summands) {
        if (s.cyclic)
            std::cout << "(" << s.end_degree << ", cyclic, " << s.d.str() << ")\n";
        else
            std::cout << "(" << s.end_degree << ", free, rank " << s.rank << ")\n";
    }
    return 0;
}

int cmd_certify(const std::string& path, bool json) {
    const ChainComplex c = load_complex(path, true);
    const IrreducibilityCertificate cert = find_certificate(c);
    if (json) {
        std::cout << certificate_to_json(cert).dump(2) << "\n";
        return cert.certified ? 0 : 1;
    }
    if (cert.certified) {
        std::cout << "certified; top degree " << cert.top_degree << "; s per differential:";
        for (const auto& d : cert.differentials)
            std::cout << " " << d.degree << ":" << d.s;
        std::cout << "\n";
        return 0;
    }
    std::cout << "refused (under a = m): " << cert.refusal_reason << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for perfect complexes over commutative rings"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "construct a complex and write it as JSON");
    gen->require_subcommand(1);
    std::string gen_ring_text, gen_out, gen_plan;
    int gen_n = 2, gen_m = 2;
    std::uint64_t gen_seed = 0;
    int gen_ops = 8;

    auto* gen_koszul = gen->add_subcommand("koszul", "Koszul complex on the ring variables");
    gen_koszul->add_option("--n", gen_n, "number of variables")->check(CLI::PositiveNumber);
    gen_koszul->add_option("--ring", gen_ring_text, "ring descriptor (default q-local:n)");
    gen_koszul->add_option("--out", gen_out, "output file (default stdout)");

    auto* gen_fn = gen->add_subcommand("fn", "length-n member of the F-family");
    gen_fn->add_option("--n", gen_n, "length")->required()->check(CLI::PositiveNumber);
    gen_fn->add_option("--ring", gen_ring_text, "ring descriptor (default q-local:2)");
    gen_fn->add_option("--out", gen_out, "output file (default stdout)");

    auto* gen_iter = gen->add_subcommand("iterated", "iterated Koszul complex");
    gen_iter->add_option("--n", gen_n, "number of variables (>= 2)");
    gen_iter->add_option("--ring", gen_ring_text, "ring descriptor (default q-local:n)");
    gen_iter->add_option("--out", gen_out, "output file (default stdout)");

    auto* gen_multi = gen->add_subcommand("multi", "multiply iterated Koszul complex");
    gen_multi->add_option("--n", gen_n, "number of variables (>= 2)");
    gen_multi->add_option("--m", gen_m, "number of glue junctions")->check(CLI::PositiveNumber);
    gen_multi->add_option("--ring", gen_ring_text, "ring descriptor (default q-local:n)");
    gen_multi->add_option("--out", gen_out, "output file (default stdout)");

    auto* gen_scrambled = gen->add_subcommand("scrambled", "scrambled planted direct sum");
    gen_scrambled->add_option("--ring", gen_ring_text, "PID ring descriptor")->required();
    gen_scrambled->add_option("--plan", gen_plan, "plan, e.g. \"(0,c2),(0,c3),(1,f)\"")->required();
    gen_scrambled->add_option("--seed", gen_seed, "scramble seed");
    gen_scrambled->add_option("--ops", gen_ops, "elementary operations per degree");
    gen_scrambled->add_option("--out", gen_out, "output file (default stdout)");

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "run an analysis on a complex file");
    analyze->require_subcommand(1);
    std::string in_path, refine_level = "invariant";
    bool json_out = false, no_check = false;
    for (const char* name : {"validate", "minimize", "width", "decompose", "cohomology", "certify"}) {
        auto* sub = analyze->add_subcommand(name);
        sub->add_option("input", in_path, "complex JSON file")->required();
        sub->add_flag("--json", json_out, "machine-readable output");
        if (std::string(name) == "validate")
            sub->add_flag("--no-check", no_check, "skip the d.d = 0 check");
        if (std::string(name) == "decompose")
            sub->add_option("--refine", refine_level, "invariant|primary")
                ->check(CLI::IsMember({"invariant", "primary"}));
    }

    // ---- demo ----
    auto* demo = app.add_subcommand("demo", "end-to-end demo harnesses");
    demo->require_subcommand(1);
    int demo_trials = 200, demo_max_n = 10;
    std::uint64_t demo_seed = 1;
    DedekindBounds bounds;
    auto* demo_dedekind = demo->add_subcommand("dedekind", "planted decomposition round-trips over PIDs");
    demo_dedekind->add_option("--trials", demo_trials, "number of seeded trials")
        ->check(CLI::NonNegativeNumber);
    demo_dedekind->add_option("--seed", demo_seed, "master seed");
    demo_dedekind->add_option("--max-rank", bounds.max_rank, "per-degree rank cap");
    demo_dedekind->add_option("--max-span", bounds.max_span, "degree span cap");
    demo_dedekind->add_option("--max-abs-d", bounds.max_abs_d, "|d| cap over the integers");
    demo_dedekind->add_option("--max-deg-d", bounds.max_deg_d, "deg d cap over GF(p)[x]");
    demo_dedekind->add_option("--ops", bounds.scramble_ops, "scramble operations per degree");
    demo_dedekind->add_flag("--json", json_out, "machine-readable output");
    auto* demo_local = demo->add_subcommand("local", "certified indecomposables of every length");
    demo_local->add_option("--max-n", demo_max_n, "largest F-family length")->check(CLI::PositiveNumber);
    demo_local->add_option("--seed", demo_seed, "echoed into the report");
    demo_local->add_flag("--json", json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            Ring ring = Ring::integers();
            ChainComplex out(ring);
            Json payload;
            if (gen_scrambled->parsed()) {
                ring = Ring::parse(gen_ring_text);
                ScrambleConfig cfg;
                cfg.ops_per_degree = gen_ops;
                const PlantedDecomposition planted =
                    scrambled_sum(ring, parse_plan(ring, gen_plan), gen_seed, cfg);
                payload = planted_to_json(planted);
            } else {
                if (gen_fn->parsed()) {
                    ring = gen_ring_text.empty() ? Ring::localized_poly(Ring::rationals(), 2)
                                                 : Ring::parse(gen_ring_text);
                    out = f_n(ring, gen_n);
                } else {
                    ring = gen_ring_text.empty() ? Ring::localized_poly(Ring::rationals(), gen_n)
                                                 : Ring::parse(gen_ring_text);
                    if (!gen_ring_text.empty() && gen_koszul->count("--n") + gen_iter->count("--n") +
                                                          gen_multi->count("--n") >
                                                      0 &&
                        ring.num_vars() != gen_n)
                        throw error("--n disagrees with the ring's number of variables");
                    if (gen_koszul->parsed()) out = koszul(ring);
                    if (gen_iter->parsed()) out = iterated_koszul(ring);
                    if (gen_multi->parsed()) out = multi_iterated_koszul(ring, gen_m);
                }
                payload = complex_to_json(out);
            }
            write_output(gen_out, payload);
            return 0;
        }
        if (analyze->parsed()) {
            for (auto* sub : analyze->get_subcommands()) {
                const std::string name = sub->get_name();
                if (name == "validate") return cmd_validate(in_path, no_check, json_out);
                if (name == "minimize") return cmd_minimize(in_path, json_out);
                if (name == "width") return cmd_width(in_path, json_out);
                if (name == "decompose")
                    return cmd_decompose(in_path, refine_level == "primary" ? "primary" : "invariant",
                                         json_out);
                if (name == "cohomology") return cmd_cohomology(in_path, json_out);
                if (name == "certify") return cmd_certify(in_path, json_out);
            }
            return 2;
        }
        if (demo->parsed()) {
            DemoReport report;
            if (demo_dedekind->parsed()) report = run_dedekind_demo(demo_trials, demo_seed, bounds);
            else report = run_local_demo(demo_max_n, demo_seed);
            if (json_out)
                std::cout << demo_report_to_json(report).dump(2) << "\n";
            else
                std::cout << demo_report_text(report);
            return report.passed() ? 0 : 1;
        }
    } catch (const unsupported_ring_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_complex_error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
