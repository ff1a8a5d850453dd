// Acceptance suite: one criterion per check, one pass/fail line each.
// Every expected value is pinned exactly (no tolerances); the per-criterion
// time budgets are printed next to the measured time.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "perplex/cohomology.hpp"
#include "perplex/decompose.hpp"
#include "perplex/demo.hpp"
#include "perplex/generators.hpp"
#include "perplex/irreducible.hpp"
#include "perplex/minimize.hpp"
#include "perplex/serialize.hpp"

using namespace perplex;

namespace {

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw check_failure(what);
}

Ring qloc(int n) { return Ring::localized_poly(Ring::rationals(), n); }

ChainComplex padded_with_acyclic(const ChainComplex& c, int end_degree, std::uint64_t seed) {
    Matrix unit(c.ring(), 1, 1);
    unit.at(0, 0) = RElem::one(c.ring());
    const ChainComplex acyclic = ChainComplex::build(c.ring(), end_degree - 1, {1, 1}, {unit});
    return scramble_complex(direct_sum(c, acyclic), seed);
}

std::map<int, int> nonzero_ranks(const ChainComplex& c) {
    std::map<int, int> out;
    if (c.is_empty()) return out;
    for (int deg = c.min_deg(); deg <= c.max_deg(); ++deg)
        if (c.rank(deg) > 0) out[deg] = c.rank(deg);
    return out;
}

std::vector<std::pair<std::string, ChainComplex>> generator_suite() {
    std::vector<std::pair<std::string, ChainComplex>> out;
    for (int n = 1; n <= 6; ++n) out.emplace_back("koszul(" + std::to_string(n) + ")", koszul(qloc(n)));
    for (int n = 1; n <= 12; ++n)
        out.emplace_back("f_" + std::to_string(n), f_n(qloc(2), n));
    for (int n = 2; n <= 5; ++n)
        out.emplace_back("iterated(" + std::to_string(n) + ")", iterated_koszul(qloc(n)));
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            out.emplace_back("multi(" + std::to_string(n) + "," + std::to_string(m) + ")",
                             multi_iterated_koszul(qloc(n), m));
    return out;
}

void criterion_complex_axioms() {
    for (const auto& [name, c] : generator_suite()) {
        require(validate(c).ok, name + " fails validate");
        require(validate(shift(c, 1)).ok, name + " fails validate after shift(1)");
        require(validate(shift(c, -2)).ok, name + " fails validate after shift(-2)");
        require(validate(direct_sum(c, c)).ok, name + " fails validate after direct_sum");
        for (int a = c.min_deg(); a <= c.max_deg(); ++a)
            require(validate(truncate(c, a)).ok,
                    name + " fails validate after truncate at " + std::to_string(a));
        require(validate(cone(ChainMap(c, c))).ok, name + " fails validate after zero-map cone");
        std::map<int, Matrix> id;
        for (int deg = c.min_deg(); deg <= c.max_deg(); ++deg)
            id.emplace(deg, Matrix::identity(c.ring(), c.rank(deg)));
        require(validate(cone(ChainMap(c, c, id))).ok,
                name + " fails validate after identity cone");
    }
}

void criterion_fn_certificates() {
    for (int n = 1; n <= 10; ++n) {
        const ChainComplex f = f_n(qloc(2), n);
        const IrreducibilityCertificate cert = find_certificate(f);
        require(cert.certified, "f_" + std::to_string(n) + " not certified");
        require(static_cast<int>(cert.differentials.size()) == n,
                "f_" + std::to_string(n) + " has the wrong number of differential checks");
        for (const auto& d : cert.differentials) {
            const int expected = d.degree == -1 ? 1 : 2;
            require(d.s == expected, "f_" + std::to_string(n) + " has s=" + std::to_string(d.s) +
                                         " at degree " + std::to_string(d.degree));
            require(d.injectivity_rank == d.cols,
                    "f_" + std::to_string(n) + " induced map not injective");
        }
        require(verify_certificate(f, cert), "f_" + std::to_string(n) + " certificate fails reverify");
    }
}

void criterion_example_1_11() {
    for (int n = 2; n <= 5; ++n) {
        const ChainComplex k = koszul(qloc(n));
        const IrreducibilityCertificate cert = find_certificate(k);
        require(cert.certified, "koszul(" + std::to_string(n) + ") not certified");
        for (const auto& d : cert.differentials)
            require(d.s == 1, "koszul(" + std::to_string(n) + ") has s != 1");
    }
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            const ChainComplex c = multi_iterated_koszul(qloc(n), m);
            const IrreducibilityCertificate cert = find_certificate(c);
            require(cert.certified, "multi(" + std::to_string(n) + "," + std::to_string(m) +
                                        ") not certified: " + cert.refusal_reason);
            require(verify_certificate(c, cert), "multi certificate fails reverify");
        }
}

void criterion_pid_regularity() {
    const DemoReport report = run_dedekind_demo(200, 20260810);
    require(report.trials == 200, "expected 200 trials");
    for (const auto& f : report.failures)
        std::cerr << "  failure: " << f.instance << ": " << f.reason << "\n";
    require(report.failures.empty(), std::to_string(report.failures.size()) + " trials failed");
    require(report.max_width.has_value() && *report.max_width <= 1, "audited width above 1");
}

void criterion_lemma_1_6() {
    std::vector<std::pair<std::string, ChainComplex>> corpus;
    const Ring r2 = qloc(2);
    for (int n = 1; n <= 5; ++n) corpus.emplace_back("f_" + std::to_string(n), f_n(r2, n));
    for (int n = 1; n <= 4; ++n) corpus.emplace_back("koszul(" + std::to_string(n) + ")", koszul(qloc(n)));
    corpus.emplace_back("iterated(3)", iterated_koszul(qloc(3)));
    corpus.emplace_back("multi(2,3)", multi_iterated_koszul(r2, 3));
    corpus.emplace_back("f2+f3", direct_sum(f_n(r2, 2), f_n(r2, 3)));
    corpus.emplace_back("koszul2+f2", direct_sum(koszul(r2), f_n(r2, 2)));
    corpus.emplace_back("f3 padded", padded_with_acyclic(f_n(r2, 3), 0, 101));
    corpus.emplace_back("f4 padded deep", padded_with_acyclic(f_n(r2, 4), -2, 102));

    for (const auto& [name, c] : corpus) {
        const MinimizationResult once = minimize(c);
        require(is_minimal(once.complex), name + ": result not minimal");
        const MinimizationResult twice = minimize(once.complex);
        require(twice.complex == once.complex && twice.transcript.steps.empty(),
                name + ": minimize not idempotent");
        // Betti identity
        const CohomologyReport red = cohomology(reduce_mod_maximal(c));
        std::map<int, int> betti;
        for (const auto& [deg, e] : red.entries) betti[deg] = e.free_rank;
        require(nonzero_ranks(once.complex) == betti, name + ": Betti identity fails");
        // pivot-order independence of the rank vector
        const MinimizationResult colwise = minimize(c, PivotScan::column_major);
        require(nonzero_ranks(colwise.complex) == nonzero_ranks(once.complex),
                name + ": scan orders disagree");
    }

    // over a localized PID, minimization preserves cohomology
    const Ring z3 = Ring::localized_integers(3);
    SplitMix64 rng(515);
    for (int t = 0; t < 10; ++t) {
        std::vector<SummandSpec> plan;
        const int pieces = static_cast<int>(rng.in_range(1, 4));
        for (int i = 0; i < pieces; ++i) {
            const int end = static_cast<int>(rng.in_range(-1, 2));
            if (rng.coin()) {
                long long d = 3;
                for (long long j = rng.in_range(0, 2); j > 0; --j) d *= 3;
                plan.push_back({end, true, RElem::of_rational(z3, Rat(d))});
            } else {
                plan.push_back({end, false, RElem::zero(z3)});
            }
        }
        const ChainComplex c = padded_with_acyclic(scrambled_sum(z3, plan, rng.next()).complex, 2,
                                                   rng.next());
        require(cohomology(minimize(c).complex) == cohomology(c),
                "cohomology changed under minimization over Z_(3)");
    }
}

void criterion_negative_controls() {
    const Ring r2 = qloc(2);
    const ChainComplex sum = direct_sum(f_n(r2, 3), f_n(r2, 3));
    const IrreducibilityCertificate cert = find_certificate(sum);
    require(!cert.certified, "decomposable sum was certified");
    require(cert.refusal_reason.find("condition (a)") != std::string::npos,
            "sum refused for the wrong reason: " + cert.refusal_reason);

    const ChainComplex f4 = f_n(r2, 4);
    const ChainComplex padded = padded_with_acyclic(f4, 0, 77);
    const MinimizationResult res = minimize(padded);
    require(res.complex.rank_vector() == f4.rank_vector(),
            "padded F-family does not minimize back to (1, 2, ..., 2)");

    ChainComplex f3 = f_n(r2, 3);
    Json j = complex_to_json(f3);
    const RElem entry = f3.diff_at(-2).at(0, 0);
    j["diffs"]["-2"][0][0] = print_element(-entry); // flip one interior sign
    bool rejected = false;
    try {
        complex_from_json(j);
    } catch (const invalid_complex_error&) {
        rejected = true;
    }
    require(rejected, "sign-tampered f_3 still validates");
    const ChainComplex tampered = complex_from_json(j, false);
    require(!validate(tampered).ok, "validate accepts the tampered complex");
}

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const char* tmp = std::getenv("TMPDIR");
    const std::string out_file = std::string(tmp ? tmp : "/tmp") + "/perplex_acceptance_out.txt";
    const std::string cmd = std::string(PERPLEX_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

void criterion_demos() {
    const CliRun d1 = run_cli("demo dedekind --trials 200 --seed 1");
    require(d1.exit_code == 0, "demo dedekind exited " + std::to_string(d1.exit_code));
    const CliRun d2 = run_cli("demo dedekind --trials 200 --seed 1");
    require(d1.out == d2.out, "demo dedekind reports differ between runs");

    const CliRun l1 = run_cli("demo local --max-n 10 --seed 1");
    require(l1.exit_code == 0, "demo local exited " + std::to_string(l1.exit_code));
    const CliRun l2 = run_cli("demo local --max-n 10 --seed 1");
    require(l1.out == l2.out, "demo local reports differ between runs");
    require(l1.out.find("certified lengths: 1 2 3 4 5 6 7 8 9 10") != std::string::npos,
            "demo local misses a certified length");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        double budget_seconds;
        std::function<void()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "complex axioms hold for every generator and closed operation", 10, criterion_complex_axioms},
        {2, "F-family certificates for n = 1..10 with s = (2,...,2,1)", 5, criterion_fn_certificates},
        {3, "Koszul s = 1 certificates and (multi-)iterated certificates", 10, criterion_example_1_11},
        {4, "200 planted PID instances decompose and refine back exactly", 60, criterion_pid_regularity},
        {5, "minimization: idempotent, Betti identity, order-independent", 30, criterion_lemma_1_6},
        {6, "negative controls refuse, recover, and fail validation", 5, criterion_negative_controls},
        {7, "demo harnesses exit 0 with byte-identical reports", 90, criterion_demos},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.body();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.1fs, budget %.0fs)%s%s\n", verdict.c_str(), c.id,
                    c.title.c_str(), secs, c.budget_seconds, detail.empty() ? "" : " -- ",
                    detail.c_str());
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
