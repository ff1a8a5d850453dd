#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "perplex/cohomology.hpp"
#include "perplex/decompose.hpp"
#include "perplex/generators.hpp"
#include "perplex/irreducible.hpp"
#include "perplex/minimize.hpp"

namespace perplex {

using Json = nlohmann::json;

// ---- ring descriptors (tagged records) ----

inline Json ring_to_json(const Ring& r) {
    switch (r.kind()) {
    case RingKind::rationals: return Json{{"kind", "rationals"}};
    case RingKind::prime_field: return Json{{"kind", "prime_field"}, {"p", r.p()}};
    case RingKind::integers: return Json{{"kind", "integers"}};
    case RingKind::univariate_poly:
        return Json{{"kind", "univariate_poly"}, {"base", ring_to_json(r.base_field())}};
    case RingKind::localized_poly:
        return Json{{"kind", "localized_poly"},
                    {"base", ring_to_json(r.base_field())},
                    {"num_vars", r.num_vars()}};
    case RingKind::localized_integers:
        return Json{{"kind", "localized_integers"}, {"p", r.p()}};
    }
    throw error("unreachable ring kind");
}

inline Ring ring_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw parse_error("ring descriptor must be a tagged object");
    const std::string kind = j["kind"].get<std::string>();
    const auto get_p = [&]() -> std::int64_t {
        if (!j.contains("p") || !j["p"].is_number_integer())
            throw parse_error("ring descriptor needs an integer p");
        return j["p"].get<std::int64_t>();
    };
    if (kind == "rationals") return Ring::rationals();
    if (kind == "integers") return Ring::integers();
    if (kind == "prime_field") return Ring::prime_field(get_p());
    if (kind == "localized_integers") return Ring::localized_integers(get_p());
    if (kind == "univariate_poly") {
        if (!j.contains("base")) throw parse_error("polynomial ring needs a base");
        return Ring::univariate_poly(ring_from_json(j["base"]));
    }
    if (kind == "localized_poly") {
        if (!j.contains("base") || !j.contains("num_vars") || !j["num_vars"].is_number_integer())
            throw parse_error("localized polynomial ring needs base and num_vars");
        return Ring::localized_poly(ring_from_json(j["base"]), j["num_vars"].get<int>());
    }
    throw parse_error("unknown ring kind: " + kind);
}

// ---- element grammar ----
//
// integers            decimal string          "-12"
// rationals           "a" or "a/b"            "2/3"
// GF(p)               residue decimal         "3"
// k[x]                sparse term list        [[[2],"1"],[[0],"-1"]]
// k[x_1..x_n] loc.    {"num": <terms>, "den": <terms>}
// Z_(p)               {"num": "a", "den": "b"}

namespace detail {

inline Json poly_to_json(const Poly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json exps = Json::array();
        for (int x : e) exps.push_back(x);
        terms.push_back(Json::array({exps, c.str()}));
    }
    return terms;
}

inline Poly poly_from_json(const Json& j, int nvars, std::int64_t p) {
    if (!j.is_array()) throw parse_error("polynomial must be a list of [exponents, coefficient]");
    Poly f(nvars, p);
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_array() || !term[1].is_string())
            throw parse_error("polynomial term must be [exponent-vector, coefficient-string]");
        Exps e;
        for (const auto& x : term[0]) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                throw parse_error("exponents must be nonnegative integers");
            e.push_back(x.get<int>());
        }
        if (static_cast<int>(e.size()) != nvars)
            throw parse_error("exponent vector length does not match the number of variables");
        const Scalar c = Scalar::parse(term[1].get<std::string>(), p);
        if (c.is_zero()) throw parse_error("zero coefficient in sparse polynomial");
        if (!f.coeff(e).is_zero()) throw parse_error("duplicate exponent vector in polynomial");
        f = f + Poly::monomial(nvars, e, c);
    }
    return f;
}

} // namespace detail

inline std::string print_element(const RElem& a) {
    switch (a.ring().kind()) {
    case RingKind::integers: return a.int_value().str();
    case RingKind::rationals: {
        const Int n = numerator(a.rat_value()), d = denominator(a.rat_value());
        return d == 1 ? n.str() : n.str() + "/" + d.str();
    }
    case RingKind::prime_field: return std::to_string(a.residue_value());
    case RingKind::univariate_poly: return detail::poly_to_json(a.num()).dump();
    case RingKind::localized_poly: {
        Json j;
        j["num"] = detail::poly_to_json(a.num());
        j["den"] = detail::poly_to_json(a.den());
        return j.dump();
    }
    case RingKind::localized_integers: {
        Json j;
        j["num"] = numerator(a.rat_value()).str();
        j["den"] = denominator(a.rat_value()).str();
        return j.dump();
    }
    }
    throw error("unreachable ring kind");
}

inline RElem parse_element(const Ring& ring, const std::string& text) {
    switch (ring.kind()) {
    case RingKind::integers: {
        const Scalar s = Scalar::parse(text, 0);
        if (denominator(s.rat()) != 1) throw parse_error("not an integer: " + text);
        return RElem::of_integer(ring, numerator(s.rat()));
    }
    case RingKind::rationals: return RElem::of_rational(ring, Scalar::parse(text, 0).rat());
    case RingKind::prime_field: {
        const Scalar s = Scalar::parse(text, 0);
        if (denominator(s.rat()) != 1) throw parse_error("not a residue: " + text);
        return RElem::of_residue(ring, numerator(s.rat()));
    }
    case RingKind::univariate_poly: {
        Json j;
        try { j = Json::parse(text); } catch (const Json::exception& e) {
            throw parse_error(std::string("bad polynomial literal: ") + e.what());
        }
        return RElem::of_poly(ring, detail::poly_from_json(j, 1, ring.p()));
    }
    case RingKind::localized_poly:
    case RingKind::localized_integers: {
        Json j;
        try { j = Json::parse(text); } catch (const Json::exception& e) {
            throw parse_error(std::string("bad localized element literal: ") + e.what());
        }
        if (!j.is_object() || !j.contains("num") || !j.contains("den"))
            throw parse_error("localized element must be {num, den}");
        if (ring.kind() == RingKind::localized_poly)
            return RElem::of_frac(ring, detail::poly_from_json(j["num"], ring.num_vars(), ring.p()),
                                  detail::poly_from_json(j["den"], ring.num_vars(), ring.p()));
        if (!j["num"].is_string() || !j["den"].is_string())
            throw parse_error("localized integer parts must be decimal strings");
        const Scalar n = Scalar::parse(j["num"].get<std::string>(), 0);
        const Scalar d = Scalar::parse(j["den"].get<std::string>(), 0);
        if (denominator(n.rat()) != 1 || denominator(d.rat()) != 1 || d.rat() == 0)
            throw parse_error("localized integer parts must be integers with nonzero denominator");
        return RElem::of_rational(ring, n.rat() / d.rat());
    }
    }
    throw error("unreachable ring kind");
}

// ---- matrices and complexes ----

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(print_element(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, const Ring& ring, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw parse_error("matrix must have " + std::to_string(rows) + " rows");
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw parse_error("matrix row " + std::to_string(i) + " must have " +
                              std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const Json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_string()) throw parse_error("matrix entries must be strings");
            m.at(i, c) = parse_element(ring, cell.get<std::string>());
        }
    }
    return m;
}

inline Json complex_to_json(const ChainComplex& c) {
    Json j;
    j["ring"] = ring_to_json(c.ring());
    if (c.is_empty()) {
        j["min_deg"] = 0;
        j["max_deg"] = -1;
        j["ranks"] = Json::object();
        j["diffs"] = Json::object();
        return j;
    }
    j["min_deg"] = c.min_deg();
    j["max_deg"] = c.max_deg();
    Json ranks = Json::object();
    for (int deg = c.min_deg(); deg <= c.max_deg(); ++deg)
        ranks[std::to_string(deg)] = c.rank(deg);
    j["ranks"] = std::move(ranks);
    Json diffs = Json::object();
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg)
        if (c.rank(deg) > 0 && c.rank(deg + 1) > 0)
            diffs[std::to_string(deg)] = matrix_to_json(c.diff_at(deg));
    j["diffs"] = std::move(diffs);
    return j;
}

/// Parse a complex; shapes are always checked, the d.d = 0 condition only
/// when `check` is set (the CLI's --no-check switches it off).
inline ChainComplex complex_from_json(const Json& j, bool check = true) {
    if (!j.is_object()) throw parse_error("complex must be an object");
    for (const char* key : {"ring", "min_deg", "max_deg", "ranks", "diffs"})
        if (!j.contains(key)) throw parse_error(std::string("complex is missing \"") + key + "\"");
    const Ring ring = ring_from_json(j["ring"]);
    if (!j["min_deg"].is_number_integer() || !j["max_deg"].is_number_integer())
        throw parse_error("min_deg/max_deg must be integers");
    const int lo = j["min_deg"].get<int>();
    const int hi = j["max_deg"].get<int>();
    if (hi < lo) return ChainComplex(ring);
    std::vector<int> ranks;
    for (int deg = lo; deg <= hi; ++deg) {
        const std::string key = std::to_string(deg);
        if (!j["ranks"].contains(key) || !j["ranks"][key].is_number_integer())
            throw parse_error("missing rank at degree " + key);
        const int r = j["ranks"][key].get<int>();
        if (r < 0) throw parse_error("negative rank at degree " + key);
        ranks.push_back(r);
    }
    std::vector<Matrix> diffs;
    for (int deg = lo; deg < hi; ++deg) {
        const std::string key = std::to_string(deg);
        const int rows = ranks[static_cast<std::size_t>(deg - lo + 1)];
        const int cols = ranks[static_cast<std::size_t>(deg - lo)];
        if (j["diffs"].contains(key)) {
            diffs.push_back(matrix_from_json(j["diffs"][key], ring, rows, cols));
        } else {
            if (rows > 0 && cols > 0)
                throw parse_error("missing differential at degree " + key);
            diffs.emplace_back(ring, rows, cols);
        }
    }
    ChainComplex c = ChainComplex::build(ring, lo, std::move(ranks), std::move(diffs));
    if (check) {
        const ValidationResult vr = validate(c);
        if (!vr.ok) throw invalid_complex_error("parsed complex is not a complex: " + vr.message);
    }
    return c;
}

// ---- reports ----

inline Json cohomology_to_json(const CohomologyReport& r) {
    Json degrees = Json::object();
    for (const auto& [deg, entry] : r.entries) {
        Json e;
        e["free_rank"] = entry.free_rank;
        Json factors = Json::array();
        for (const auto& f : entry.invariant_factors) factors.push_back(print_element(f));
        e["invariant_factors"] = std::move(factors);
        degrees[std::to_string(deg)] = std::move(e);
    }
    return Json{{"ring", ring_to_json(r.ring)}, {"degrees", std::move(degrees)}};
}

inline Json decomposition_to_json(const DecompositionReport& r) {
    Json summands = Json::array();
    for (const auto& s : r.summands) {
        Json e;
        e["end_degree"] = s.end_degree;
        e["kind"] = s.cyclic ? "cyclic" : "free";
        if (s.cyclic)
            e["d"] = print_element(s.d);
        else
            e["rank"] = s.rank;
        summands.push_back(std::move(e));
    }
    return Json{{"ring", ring_to_json(r.ring)},
                {"refinement", r.refinement == Refinement::primary ? "primary" : "invariant_factor"},
                {"summands", std::move(summands)}};
}

inline DecompositionReport decomposition_from_json(const Json& j) {
    DecompositionReport r;
    r.ring = ring_from_json(j.at("ring"));
    const std::string level = j.at("refinement").get<std::string>();
    if (level != "primary" && level != "invariant_factor")
        throw parse_error("unknown refinement level: " + level);
    r.refinement = level == "primary" ? Refinement::primary : Refinement::invariant_factor;
    for (const auto& e : j.at("summands")) {
        Summand s;
        s.end_degree = e.at("end_degree").get<int>();
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "cyclic") {
            s.cyclic = true;
            s.d = parse_element(r.ring, e.at("d").get<std::string>());
        } else if (kind == "free") {
            s.cyclic = false;
            s.rank = e.at("rank").get<int>();
            s.d = RElem::zero(r.ring);
        } else {
            throw parse_error("unknown summand kind: " + kind);
        }
        r.summands.push_back(std::move(s));
    }
    return r;
}

inline Json transcript_to_json(const MinimizationTranscript& t) {
    const auto ranks_json = [](const std::map<int, int>& m) {
        Json j = Json::object();
        for (const auto& [deg, r] : m) j[std::to_string(deg)] = r;
        return j;
    };
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back(Json{{"degree", s.degree},
                             {"row", s.row},
                             {"col", s.col},
                             {"pivot", print_element(s.pivot)}});
    return Json{{"initial_ranks", ranks_json(t.initial_ranks)},
                {"final_ranks", ranks_json(t.final_ranks)},
                {"steps", std::move(steps)}};
}

inline Json certificate_to_json(const IrreducibilityCertificate& c) {
    Json diffs = Json::array();
    for (const auto& d : c.differentials)
        diffs.push_back(Json{{"degree", d.degree},
                             {"s", d.s},
                             {"injectivity_rank", d.injectivity_rank},
                             {"shape", Json::array({d.rows, d.cols})}});
    Json j{{"ring", ring_to_json(c.ring)},
           {"top_degree", c.top_degree},
           {"verdict", c.certified ? "certified" : "refused"},
           {"differentials", std::move(diffs)}};
    if (!c.certified) {
        j["reason"] = c.refusal_reason;
        j["refused_degree"] = c.refused_degree;
    }
    return j;
}

inline IrreducibilityCertificate certificate_from_json(const Json& j) {
    IrreducibilityCertificate c;
    c.ring = ring_from_json(j.at("ring"));
    c.top_degree = j.at("top_degree").get<int>();
    c.certified = j.at("verdict").get<std::string>() == "certified";
    if (!c.certified) {
        c.refusal_reason = j.value("reason", std::string());
        c.refused_degree = j.value("refused_degree", 0);
    }
    for (const auto& e : j.at("differentials")) {
        DifferentialCheck d;
        d.degree = e.at("degree").get<int>();
        d.s = e.at("s").get<int>();
        d.injectivity_rank = e.at("injectivity_rank").get<int>();
        d.rows = e.at("shape").at(0).get<int>();
        d.cols = e.at("shape").at(1).get<int>();
        c.differentials.push_back(d);
    }
    return c;
}

inline Json planted_to_json(const PlantedDecomposition& p) {
    Json summands = Json::array();
    for (const auto& s : p.summands) {
        Json e;
        e["end_degree"] = s.end_degree;
        e["kind"] = s.cyclic ? "cyclic" : "free";
        if (s.cyclic) e["d"] = print_element(s.d);
        summands.push_back(std::move(e));
    }
    return Json{{"seed", p.seed},
                {"summands", std::move(summands)},
                {"complex", complex_to_json(p.complex)}};
}

inline PlantedDecomposition planted_from_json(const Json& j) {
    PlantedDecomposition p;
    p.seed = j.at("seed").get<std::uint64_t>();
    p.complex = complex_from_json(j.at("complex"));
    for (const auto& e : j.at("summands")) {
        SummandSpec s;
        s.end_degree = e.at("end_degree").get<int>();
        s.cyclic = e.at("kind").get<std::string>() == "cyclic";
        s.d = s.cyclic ? parse_element(p.complex.ring(), e.at("d").get<std::string>())
                       : RElem::zero(p.complex.ring());
        p.summands.push_back(std::move(s));
    }
    return p;
}

} // namespace perplex
