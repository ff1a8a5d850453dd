#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "perplex/decompose.hpp"
#include "perplex/irreducible.hpp"
#include "perplex/minimize.hpp"
#include "perplex/serialize.hpp"

namespace perplex {

struct DemoFailure {
    std::string instance;
    std::string reason;
};

struct DedekindBounds {
    int max_rank = 6;    // per-degree rank cap of the planted sum
    int max_span = 4;    // degree span cap
    int max_abs_d = 9;   // |d| cap over Z
    int max_deg_d = 3;   // deg d cap over GF(p)[x]
    int scramble_ops = 8;
};

struct DemoReport {
    std::string scenario;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<DemoFailure> failures;
    std::optional<int> max_width;       // dedekind scenario
    std::vector<int> certified_lengths; // local scenario
    int max_n = 0;                      // local scenario
    DedekindBounds bounds;              // dedekind scenario

    bool passed() const { return failures.empty(); }
};

namespace detail {

inline RElem sample_torsion(const Ring& ring, SplitMix64& rng, const DedekindBounds& b) {
    if (ring.kind() == RingKind::integers) {
        const std::int64_t v = rng.in_range(2, b.max_abs_d);
        return RElem::from_int(ring, rng.coin() ? v : -v);
    }
    if (ring.kind() == RingKind::univariate_poly && ring.p() != 0) {
        const int deg = static_cast<int>(rng.in_range(1, b.max_deg_d));
        Poly f = Poly::monomial(1, Exps{deg},
                                Scalar::residue(Int(rng.in_range(1, ring.p() - 1)), ring.p()));
        for (int i = 0; i < deg; ++i)
            f = f + Poly::monomial(1, Exps{i},
                                   Scalar::residue(Int(rng.in_range(0, ring.p() - 1)), ring.p()));
        return RElem::of_poly(ring, f);
    }
    throw unsupported_ring_error("no torsion sampler for " + ring.str());
}

inline std::vector<SummandSpec> sample_plan(const Ring& ring, SplitMix64& rng,
                                            const DedekindBounds& b) {
    const int window_lo = static_cast<int>(rng.in_range(-2, 1));
    const int width = static_cast<int>(rng.in_range(1, b.max_span));
    std::map<int, int> load;
    std::vector<SummandSpec> plan;
    const int want = static_cast<int>(rng.in_range(1, 6));
    for (int attempt = 0; attempt < 3 * want && static_cast<int>(plan.size()) < want; ++attempt) {
        if (rng.below(10) < 7) {
            const int e = static_cast<int>(rng.in_range(window_lo + 1, window_lo + width));
            if (load[e] >= b.max_rank || load[e - 1] >= b.max_rank) continue;
            plan.push_back({e, true, sample_torsion(ring, rng, b)});
            ++load[e];
            ++load[e - 1];
        } else {
            const int e = static_cast<int>(rng.in_range(window_lo, window_lo + width));
            if (load[e] >= b.max_rank) continue;
            plan.push_back({e, false, RElem::zero(ring)});
            ++load[e];
        }
    }
    if (plan.empty()) plan.push_back({0, true, sample_torsion(ring, rng, b)});
    return plan;
}

} // namespace detail

/// Desk-scale evidence for the hereditary ("if") direction: seeded planted
/// sums over Z and GF(5)[x] must decompose into length <= 1 pieces whose
/// primary-refined multiset equals the plant.
inline DemoReport run_dedekind_demo(int trials, std::uint64_t seed, const DedekindBounds& bounds = {}) {
    if (trials < 0) throw error("trial count must be nonnegative");
    DemoReport report;
    report.scenario = "dedekind";
    report.seed = seed;
    report.trials = trials;
    report.bounds = bounds;
    const Ring rings[2] = {Ring::integers(), Ring::univariate_poly(Ring::prime_field(5))};
    for (int t = 0; t < trials; ++t) {
        const Ring& ring = rings[t % 2];
        const std::string instance = "trial " + std::to_string(t) + " over " + ring.str();
        SplitMix64 rng = SplitMix64::derived(seed, static_cast<std::uint64_t>(t));
        try {
            const auto plan = detail::sample_plan(ring, rng, bounds);
            ScrambleConfig cfg;
            cfg.ops_per_degree = bounds.scramble_ops;
            const PlantedDecomposition planted = scrambled_sum(ring, plan, rng.next(), cfg);
            const DecompositionReport found = decompose(planted.complex);
            const auto w = audit_width(found);
            if (w.has_value()) {
                if (*w > 1) {
                    report.failures.push_back({instance, "audited width " + std::to_string(*w) + " > 1"});
                    continue;
                }
                if (!report.max_width || *w > *report.max_width) report.max_width = *w;
            }
            const RefineOutcome lhs = primary_refine(found);
            const RefineOutcome rhs = primary_refine(report_from_plan(ring, plan));
            if (!lhs.refined || !rhs.refined) {
                report.failures.push_back({instance, "primary refinement refused unexpectedly"});
                continue;
            }
            if (summand_multiset(lhs.report) != summand_multiset(rhs.report))
                report.failures.push_back({instance, "recovered summands differ from the plant"});
        } catch (const error& e) {
            report.failures.push_back({instance, std::string("error: ") + e.what()});
        }
    }
    return report;
}

/// Desk-scale evidence for the converse direction: certified indecomposable
/// complexes of every length 1..max_n over a 2-variable localized ring,
/// plus Koszul and (multi-)iterated Koszul certificates.
inline DemoReport run_local_demo(int max_n, std::uint64_t seed) {
    if (max_n < 1) throw error("max-n must be positive");
    DemoReport report;
    report.scenario = "local";
    report.seed = seed;
    report.max_n = max_n;
    std::set<int> lengths;

    const auto certify = [&](const std::string& instance, const ChainComplex& c) {
        ++report.trials;
        try {
            const IrreducibilityCertificate cert = find_certificate(c);
            if (!cert.certified) {
                report.failures.push_back({instance, "refused: " + cert.refusal_reason});
                return;
            }
            if (!verify_certificate(c, cert)) {
                report.failures.push_back({instance, "certificate failed re-verification"});
                return;
            }
            if (const auto len = c.length()) lengths.insert(*len);
        } catch (const error& e) {
            report.failures.push_back({instance, std::string("error: ") + e.what()});
        }
    };

    const Ring plane = Ring::localized_poly(Ring::rationals(), 2);
    for (int n = 1; n <= max_n; ++n) certify("f_" + std::to_string(n), f_n(plane, n));
    for (int n = 2; n <= std::min(max_n, 5); ++n)
        certify("koszul n=" + std::to_string(n), koszul(Ring::localized_poly(Ring::rationals(), n)));
    for (int n = 2; n <= std::min(max_n, 4); ++n) {
        const Ring ring = Ring::localized_poly(Ring::rationals(), n);
        certify("iterated n=" + std::to_string(n), iterated_koszul(ring));
        for (int m = 2; m <= std::min(max_n, 4); ++m)
            certify("multi n=" + std::to_string(n) + " m=" + std::to_string(m),
                    multi_iterated_koszul(ring, m));
    }
    report.certified_lengths.assign(lengths.begin(), lengths.end());
    return report;
}

inline Json demo_report_to_json(const DemoReport& r) {
    Json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(Json{{"instance", f.instance}, {"reason", f.reason}});
    j["failures"] = std::move(failures);
    if (r.scenario == "dedekind") {
        j["max_width"] = r.max_width ? Json(*r.max_width) : Json("empty");
        j["bounds"] = Json{{"max_rank", r.bounds.max_rank},
                           {"max_span", r.bounds.max_span},
                           {"max_abs_d", r.bounds.max_abs_d},
                           {"max_deg_d", r.bounds.max_deg_d},
                           {"scramble_ops", r.bounds.scramble_ops}};
    } else {
        j["max_n"] = r.max_n;
        j["certified_lengths"] = r.certified_lengths;
    }
    return j;
}

inline std::string demo_report_text(const DemoReport& r) {
    std::string out = "demo " + r.scenario + ": seed=" + std::to_string(r.seed);
    if (r.scenario == "dedekind") {
        out += " trials=" + std::to_string(r.trials) + "\n";
        out += "max audited width: " + (r.max_width ? std::to_string(*r.max_width) : std::string("empty")) + "\n";
    } else {
        out += " max-n=" + std::to_string(r.max_n) + "\n";
        out += "certificates checked: " + std::to_string(r.trials) + "\n";
        out += "certified lengths:";
        for (int len : r.certified_lengths) out += " " + std::to_string(len);
        out += "\n";
    }
    out += "failures: " + std::to_string(r.failures.size()) + "\n";
    for (const auto& f : r.failures) out += "  " + f.instance + ": " + f.reason + "\n";
    out += r.passed() ? "PASS\n" : "FAIL\n";
    return out;
}

} // namespace perplex
