#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perplex/numbers.hpp"

namespace perplex {

/// Exponent vector; size equals the ambient number of variables.
using Exps = std::vector<int>;

inline int total_degree(const Exps& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

struct LexLess {
    bool operator()(const Exps& a, const Exps& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial over Q or GF(p) (the base fields of the
/// supported rings). The term map never stores zero coefficients, so
/// structural equality is semantic equality.
class Poly {
public:
    using TermMap = std::map<Exps, Scalar, LexLess>;

    Poly() : nvars_(1), p_(0) {}
    Poly(int nvars, std::int64_t p) : nvars_(nvars), p_(p) {}

    static Poly constant(int nvars, const Scalar& c) {
        Poly f(nvars, c.characteristic());
        if (!c.is_zero()) f.terms_.emplace(Exps(nvars, 0), c);
        return f;
    }

    static Poly variable(int nvars, std::int64_t p, int i) {
        Poly f(nvars, p);
        Exps e(nvars, 0);
        e[i] = 1;
        f.terms_.emplace(std::move(e), Scalar::one(p));
        return f;
    }

    static Poly monomial(int nvars, const Exps& e, const Scalar& c) {
        Poly f(nvars, c.characteristic());
        if (!c.is_zero()) f.terms_.emplace(e, c);
        return f;
    }

    int nvars() const { return nvars_; }
    std::int64_t characteristic() const { return p_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Scalar constant_term() const {
        auto it = terms_.find(Exps(nvars_, 0));
        return it == terms_.end() ? Scalar::zero(p_) : it->second;
    }

    Scalar coeff(const Exps& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar::zero(p_) : it->second;
    }

    /// Maximum total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    /// Minimum total degree over the support; -1 for the zero polynomial.
    /// This is the m-adic order of the element in the localized ring.
    int low_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int t = total_degree(e);
            if (d < 0 || t < d) d = t;
        }
        return d;
    }

    Poly homogeneous_part(int s) const {
        Poly out(nvars_, p_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == s) out.terms_.emplace(e, c);
        return out;
    }

    Poly operator-() const {
        Poly out(nvars_, p_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }

    Poly operator+(const Poly& o) const {
        check(o);
        Poly out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term(e, c);
        return out;
    }

    Poly operator-(const Poly& o) const {
        check(o);
        Poly out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
        return out;
    }

    Poly operator*(const Poly& o) const {
        check(o);
        Poly out(nvars_, p_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Exps e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    Poly operator*(const Scalar& c) const {
        Poly out(nvars_, p_);
        if (c.is_zero()) return out;
        for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
        return out;
    }

    bool operator==(const Poly& o) const {
        return nvars_ == o.nvars_ && p_ == o.p_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Lex order is a total well-order on terms; the leading term drives
    // exact division and gcd normalization.
    const std::pair<const Exps, Scalar>& lex_leading() const { return *terms_.rbegin(); }

    /// Scale so the lex-leading coefficient becomes 1.
    Poly lex_normalized() const {
        if (is_zero()) return *this;
        return *this * lex_leading().second.inverse();
    }

    // ---- univariate helpers (nvars arbitrary, but single-variable content) ----

    /// Degree in one fixed variable.
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    /// Coefficient of var^k, as a polynomial with var's exponent zeroed.
    Poly coeff_in(int var, int k) const {
        Poly out(nvars_, p_);
        for (const auto& [e, c] : terms_) {
            if (e[var] != k) continue;
            Exps r = e;
            r[var] = 0;
            out.terms_.emplace(std::move(r), c);
        }
        return out;
    }

    Poly shifted_by_var_power(int var, int k) const {
        Poly out(nvars_, p_);
        for (const auto& [e, c] : terms_) {
            Exps r = e;
            r[var] += k;
            out.terms_.emplace(std::move(r), c);
        }
        return out;
    }

    /// Rational content: the positive rational c with p/c integer-coefficient
    /// and content 1. Over GF(p) growth is a non-issue and the content is 1.
    Scalar scalar_content() const {
        if (p_ != 0 || terms_.empty()) return Scalar::one(p_);
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : terms_) {
            num_gcd = gcd_int(num_gcd, numerator(c.rat()));
            const Int d = denominator(c.rat());
            den_lcm = den_lcm / gcd_int(den_lcm, d) * d;
        }
        return Scalar::rational(Rat(num_gcd) / Rat(den_lcm));
    }

    Poly scalar_primitive() const {
        const Scalar c = scalar_content();
        return c.is_one() ? *this : *this * c.inverse();
    }

    /// Division with remainder for genuinely univariate polynomials
    /// (every variable but `var` has exponent 0 in both operands).
    static void divmod_in(const Poly& a, const Poly& b, int var, Poly& q, Poly& r);

    /// Exact quotient a / b, or nullopt when b does not divide a.
    static std::optional<Poly> try_exact_div(const Poly& a, const Poly& b);

    /// Multivariate gcd, lex-normalized (leading coefficient 1); gcd(0,0) = 0.
    static Poly gcd(const Poly& a, const Poly& b);

    /// Human-readable rendering, e.g. "x^2*y - 3". For display only; the
    /// interchange grammar lives in serialize.hpp.
    std::string str(const std::vector<std::string>& names) const;

private:
    void check(const Poly& o) const {
        if (nvars_ != o.nvars_ || p_ != o.p_)
            throw ring_mismatch_error("polynomials from different rings");
    }

    void add_term(const Exps& e, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static Poly pseudo_rem(Poly a, const Poly& b, int var);
    static Poly content_in(const Poly& a, int var);

    int nvars_;
    std::int64_t p_;
    TermMap terms_;
};

inline void Poly::divmod_in(const Poly& a, const Poly& b, int var, Poly& q, Poly& r) {
    if (b.is_zero()) throw error("polynomial division by zero");
    q = Poly(a.nvars_, a.p_);
    r = a;
    const int db = b.degree_in(var);
    const Scalar lead = b.coeff_in(var, db).constant_term();
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const int dr = r.degree_in(var);
        const Scalar c = r.coeff_in(var, dr).constant_term() / lead;
        Exps e(a.nvars_, 0);
        e[var] = dr - db;
        const Poly t = Poly::monomial(a.nvars_, e, c);
        q = q + t;
        r = r - t * b;
    }
}

inline std::optional<Poly> Poly::try_exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw error("polynomial division by zero");
    Poly r = a;
    Poly q(a.nvars_, a.p_);
    const auto& [eb, cb] = b.lex_leading();
    while (!r.is_zero()) {
        const auto& [er, cr] = r.lex_leading();
        Exps e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) {
            e[i] = er[i] - eb[i];
            if (e[i] < 0) return std::nullopt;
        }
        const Poly t = Poly::monomial(a.nvars_, e, cr / cb);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

inline Poly Poly::pseudo_rem(Poly a, const Poly& b, int var) {
    const int db = b.degree_in(var);
    const Poly lead_b = b.coeff_in(var, db);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        const int da = a.degree_in(var);
        const Poly lead_a = a.coeff_in(var, da);
        // stripping the rational content each step defeats the classical
        // coefficient swell of pseudo-remainder sequences; the gcd is only
        // defined up to units anyway
        a = (a * lead_b - b.shifted_by_var_power(var, da - db) * lead_a).scalar_primitive();
    }
    return a;
}

inline Poly Poly::content_in(const Poly& a, int var) {
    Poly c(a.nvars_, a.p_);
    for (int k = 0; k <= a.degree_in(var); ++k) {
        const Poly ck = a.coeff_in(var, k);
        if (!ck.is_zero()) c = gcd(c, ck);
    }
    return c;
}

inline Poly Poly::gcd(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.is_zero()) return b.lex_normalized();
    if (b.is_zero()) return a.lex_normalized();
    if (a.is_constant() || b.is_constant())
        return constant(a.nvars_, Scalar::one(a.p_));
    // main variable: highest index occurring in either operand
    int var = -1;
    for (const Poly* f : {&a, &b})
        for (const auto& [e, c] : f->terms_)
            for (int i = f->nvars_ - 1; i > var; --i)
                if (e[i] > 0) var = i;
    const Poly ca = content_in(a, var);
    const Poly cb = content_in(b, var);
    const Poly cont = gcd(ca, cb);
    Poly pa = try_exact_div(a, ca)->scalar_primitive();
    Poly pb = try_exact_div(b, cb)->scalar_primitive();
    // primitive PRS in the main variable
    while (!pb.is_zero()) {
        Poly r = pseudo_rem(pa, pb, var);
        pa = std::move(pb);
        if (r.is_zero()) {
            pb = r;
        } else {
            pb = try_exact_div(r, content_in(r, var))->scalar_primitive();
        }
    }
    return (cont * *try_exact_div(pa, content_in(pa, var))).lex_normalized();
}

inline std::string Poly::str(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string coef = c.str();
        bool negative = !coef.empty() && coef[0] == '-';
        if (negative) coef = coef.substr(1);
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[static_cast<std::size_t>(i)];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mono.empty()) {
            out += coef;
        } else if (coef == "1") {
            out += mono;
        } else {
            out += coef + "*" + mono;
        }
        first = false;
    }
    return out;
}

} // namespace perplex
