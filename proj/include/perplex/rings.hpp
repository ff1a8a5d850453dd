#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perplex/poly.hpp"

namespace perplex {

enum class RingKind {
    rationals,
    prime_field,
    integers,
    univariate_poly,
    localized_poly,
    localized_integers,
};

/// Descriptor of a supported coefficient ring. The computable models are:
/// Q, GF(p), Z, k[x], k[x_1..x_n] localized at (x_1..x_n), and Z localized
/// at (p), with k one of Q or GF(p).
class Ring {
public:
    Ring() : kind_(RingKind::integers) {}

    static Ring rationals() { return Ring(RingKind::rationals, 0, 0); }

    static Ring prime_field(std::int64_t p) {
        require_prime(p);
        return Ring(RingKind::prime_field, p, 0);
    }

    static Ring integers() { return Ring(RingKind::integers, 0, 0); }

    static Ring univariate_poly(const Ring& base) {
        if (!base.is_field()) throw unsupported_ring_error("polynomial base must be Q or GF(p)");
        return Ring(RingKind::univariate_poly, base.p(), 1);
    }

    static Ring localized_poly(const Ring& base, int num_vars) {
        if (!base.is_field()) throw unsupported_ring_error("polynomial base must be Q or GF(p)");
        if (num_vars < 1) throw error("localized polynomial ring needs at least one variable");
        return Ring(RingKind::localized_poly, base.p(), num_vars);
    }

    static Ring localized_integers(std::int64_t p) {
        require_prime(p);
        return Ring(RingKind::localized_integers, p, 0);
    }

    RingKind kind() const { return kind_; }
    std::int64_t p() const { return p_; }
    int num_vars() const { return num_vars_; }

    bool is_field() const {
        return kind_ == RingKind::rationals || kind_ == RingKind::prime_field;
    }
    bool is_pid() const {
        return is_field() || kind_ == RingKind::integers ||
               kind_ == RingKind::univariate_poly || kind_ == RingKind::localized_integers;
    }
    bool is_local() const {
        return is_field() || kind_ == RingKind::localized_poly ||
               kind_ == RingKind::localized_integers;
    }
    bool is_poly_ring() const {
        return kind_ == RingKind::univariate_poly || kind_ == RingKind::localized_poly;
    }

    /// Base field k of a polynomial ring, or the field itself.
    Ring base_field() const {
        if (is_field()) return *this;
        if (is_poly_ring()) return p_ == 0 ? rationals() : prime_field(p_);
        throw unsupported_ring_error("ring has no designated base field: " + str());
    }

    /// Residue field A/m of a local ring.
    Ring residue_field() const {
        if (is_field()) return *this;
        if (kind_ == RingKind::localized_poly) return base_field();
        if (kind_ == RingKind::localized_integers) return prime_field(p_);
        throw unsupported_ring_error("residue field requires a local ring, got " + str());
    }

    bool operator==(const Ring& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && num_vars_ == o.num_vars_;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    /// Compact grammar used on the command line and in error messages:
    /// "q", "int", "gf:5", "q[x]", "gf:5[x]", "q-local:2", "gf:3-local:2",
    /// "int-local:3".
    std::string str() const {
        switch (kind_) {
        case RingKind::rationals: return "q";
        case RingKind::prime_field: return "gf:" + std::to_string(p_);
        case RingKind::integers: return "int";
        case RingKind::univariate_poly:
            return (p_ == 0 ? std::string("q") : "gf:" + std::to_string(p_)) + "[x]";
        case RingKind::localized_poly:
            return (p_ == 0 ? std::string("q") : "gf:" + std::to_string(p_)) + "-local:" +
                   std::to_string(num_vars_);
        case RingKind::localized_integers: return "int-local:" + std::to_string(p_);
        }
        return "?";
    }

    static Ring parse(const std::string& text);

    /// Display names for the variables: x, y, z for n <= 3, else x1..xn.
    std::vector<std::string> var_names() const {
        const int n = num_vars_ > 0 ? num_vars_ : 1;
        std::vector<std::string> names;
        if (n <= 3) {
            const char* fixed[] = {"x", "y", "z"};
            for (int i = 0; i < n; ++i) names.emplace_back(fixed[i]);
        } else {
            for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        }
        return names;
    }

private:
    Ring(RingKind k, std::int64_t p, int nv) : kind_(k), p_(p), num_vars_(nv) {}

    static void require_prime(std::int64_t p) {
        if (p < 2 || p > INT32_MAX || !is_prime_int64(p))
            throw error("modulus must be a prime below 2^31: " + std::to_string(p));
    }

    RingKind kind_;
    std::int64_t p_ = 0;  // prime, or base-field characteristic (0 = Q)
    int num_vars_ = 0;    // localized_poly: n; univariate_poly: 1
};

inline Ring Ring::parse(const std::string& text) {
    const auto as_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty()) throw parse_error("bad ring descriptor: " + text);
        for (char ch : s)
            if (ch < '0' || ch > '9') throw parse_error("bad ring descriptor: " + text);
        return std::stoll(s);
    };
    if (text == "q") return rationals();
    if (text == "int") return integers();
    if (text == "q[x]") return univariate_poly(rationals());
    if (text.rfind("int-local:", 0) == 0) return localized_integers(as_int(text.substr(10)));
    if (text.rfind("q-local:", 0) == 0)
        return localized_poly(rationals(), static_cast<int>(as_int(text.substr(8))));
    if (text.rfind("gf:", 0) == 0) {
        std::string rest = text.substr(3);
        const auto local = rest.find("-local:");
        if (local != std::string::npos)
            return localized_poly(prime_field(as_int(rest.substr(0, local))),
                                  static_cast<int>(as_int(rest.substr(local + 7))));
        if (rest.size() > 3 && rest.substr(rest.size() - 3) == "[x]")
            return univariate_poly(prime_field(as_int(rest.substr(0, rest.size() - 3))));
        return prime_field(as_int(rest));
    }
    throw parse_error("unknown ring descriptor: " + text);
}

/// m-adic order of an element of a local ring: a nonnegative integer, or
/// infinity for the zero element.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(long long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long long value() const {
        if (infinite_) throw error("valuation is infinite");
        return v_;
    }

    bool operator==(const Valuation& o) const {
        return infinite_ == o.infinite_ && (infinite_ || v_ == o.v_);
    }
    bool operator<(const Valuation& o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return v_ < o.v_;
    }
    bool at_least(long long s) const { return infinite_ || v_ >= s; }

    std::string str() const { return infinite_ ? "infinity" : std::to_string(v_); }

private:
    Valuation(bool inf, long long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long long v_;
};

/// Exact element of a supported ring, stored in canonical form:
/// reduced fractions (positive denominator over Z_(p), constant term 1 over
/// localized polynomial rings), residues in [0, p), sparse polynomials with
/// no zero terms. Equality is structural.
class RElem {
public:
    RElem() : ring_(Ring::integers()), int_(0) {}

    static RElem zero(const Ring& r) { return from_int(r, 0); }
    static RElem one(const Ring& r) { return from_int(r, 1); }

    static RElem from_int(const Ring& r, long long v) { return from_integer(r, Int(v)); }

    static RElem from_integer(const Ring& r, const Int& v) {
        RElem e(r);
        switch (r.kind()) {
        case RingKind::integers: e.int_ = v; break;
        case RingKind::rationals:
        case RingKind::localized_integers: e.rat_ = Rat(v); break;
        case RingKind::prime_field: e.res_ = detail::mod_reduce(v, r.p()); break;
        case RingKind::univariate_poly:
        case RingKind::localized_poly:
            e.num_ = Poly::constant(r.num_vars(), r.p() == 0 ? Scalar::rational(Rat(v))
                                                             : Scalar::residue(v, r.p()));
            e.den_ = Poly::constant(r.num_vars(), Scalar::one(r.p()));
            break;
        }
        return e;
    }

    static RElem of_rational(const Ring& r, const Rat& q) {
        if (r.kind() != RingKind::rationals && r.kind() != RingKind::localized_integers)
            throw ring_mismatch_error("rational value not an element of " + r.str());
        if (r.kind() == RingKind::localized_integers && denominator(q) % r.p() == 0)
            throw error("denominator not a unit in " + r.str());
        RElem e(r);
        e.rat_ = q;
        return e;
    }

    static RElem of_residue(const Ring& r, const Int& v) {
        if (r.kind() != RingKind::prime_field)
            throw ring_mismatch_error("residue value not an element of " + r.str());
        RElem e(r);
        e.res_ = detail::mod_reduce(v, r.p());
        return e;
    }

    static RElem of_integer(const Ring& r, const Int& v) {
        if (r.kind() != RingKind::integers)
            throw ring_mismatch_error("integer value not an element of " + r.str());
        RElem e(r);
        e.int_ = v;
        return e;
    }

    static RElem of_poly(const Ring& r, Poly num) {
        if (!r.is_poly_ring()) throw ring_mismatch_error("polynomial not an element of " + r.str());
        check_poly_shape(r, num);
        RElem e(r);
        e.num_ = std::move(num);
        e.den_ = Poly::constant(r.num_vars(), Scalar::one(r.p()));
        if (r.kind() == RingKind::localized_poly) e.canonicalize_frac();
        return e;
    }

    static RElem of_frac(const Ring& r, Poly num, Poly den) {
        if (r.kind() != RingKind::localized_poly)
            throw ring_mismatch_error("polynomial fraction not an element of " + r.str());
        check_poly_shape(r, num);
        check_poly_shape(r, den);
        if (den.constant_term().is_zero())
            throw error("denominator not a unit in " + r.str() +
                        " (constant term vanishes)");
        RElem e(r);
        e.num_ = std::move(num);
        e.den_ = std::move(den);
        e.canonicalize_frac();
        return e;
    }

    static RElem variable(const Ring& r, int i) {
        if (!r.is_poly_ring()) throw unsupported_ring_error("no variables in " + r.str());
        if (i < 0 || i >= r.num_vars()) throw error("variable index out of range");
        return of_poly(r, Poly::variable(r.num_vars(), r.p(), i));
    }

    /// Element of a base field (Q or GF(p)) from a Scalar.
    static RElem of_scalar(const Ring& r, const Scalar& s) {
        if (!r.is_field()) throw ring_mismatch_error("scalar not an element of " + r.str());
        if (r.p() != s.characteristic()) throw ring_mismatch_error("scalar from a different field");
        return r.p() == 0 ? of_rational(r, s.rat()) : of_residue(r, Int(s.res()));
    }

    const Ring& ring() const { return ring_; }

    // value accessors (valid for the matching kind only)
    const Int& int_value() const { return int_; }
    const Rat& rat_value() const { return rat_; }
    std::int64_t residue_value() const { return res_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const {
        switch (ring_.kind()) {
        case RingKind::integers: return int_ == 0;
        case RingKind::rationals:
        case RingKind::localized_integers: return rat_ == 0;
        case RingKind::prime_field: return res_ == 0;
        default: return num_.is_zero();
        }
    }

    bool is_one() const {
        switch (ring_.kind()) {
        case RingKind::integers: return int_ == 1;
        case RingKind::rationals:
        case RingKind::localized_integers: return rat_ == 1;
        case RingKind::prime_field: return res_ == 1;
        case RingKind::univariate_poly: return num_.is_constant() && num_.constant_term().is_one();
        case RingKind::localized_poly:
            return num_ == den_ && !num_.is_zero();
        }
        return false;
    }

    RElem operator+(const RElem& o) const {
        check(o);
        RElem e(ring_);
        switch (ring_.kind()) {
        case RingKind::integers: e.int_ = int_ + o.int_; break;
        case RingKind::rationals:
        case RingKind::localized_integers: e.rat_ = rat_ + o.rat_; break;
        case RingKind::prime_field: e.res_ = (res_ + o.res_) % ring_.p(); break;
        case RingKind::univariate_poly:
            e.num_ = num_ + o.num_;
            e.den_ = den_;
            break;
        case RingKind::localized_poly:
            e.num_ = num_ * o.den_ + o.num_ * den_;
            e.den_ = den_ * o.den_;
            e.canonicalize_frac();
            break;
        }
        return e;
    }

    RElem operator-(const RElem& o) const { return *this + (-o); }

    RElem operator-() const {
        RElem e(ring_);
        switch (ring_.kind()) {
        case RingKind::integers: e.int_ = -int_; break;
        case RingKind::rationals:
        case RingKind::localized_integers: e.rat_ = -rat_; break;
        case RingKind::prime_field: e.res_ = res_ == 0 ? 0 : ring_.p() - res_; break;
        case RingKind::univariate_poly:
            e.num_ = -num_;
            e.den_ = den_;
            break;
        case RingKind::localized_poly:
            e.num_ = -num_;
            e.den_ = den_;
            break;
        }
        return e;
    }

    RElem operator*(const RElem& o) const {
        check(o);
        RElem e(ring_);
        switch (ring_.kind()) {
        case RingKind::integers: e.int_ = int_ * o.int_; break;
        case RingKind::rationals:
        case RingKind::localized_integers: e.rat_ = rat_ * o.rat_; break;
        case RingKind::prime_field: e.res_ = detail::mul_mod(res_, o.res_, ring_.p()); break;
        case RingKind::univariate_poly:
            e.num_ = num_ * o.num_;
            e.den_ = den_;
            break;
        case RingKind::localized_poly:
            e.num_ = num_ * o.num_;
            e.den_ = den_ * o.den_;
            e.canonicalize_frac();
            break;
        }
        return e;
    }

    bool operator==(const RElem& o) const {
        check(o);
        switch (ring_.kind()) {
        case RingKind::integers: return int_ == o.int_;
        case RingKind::rationals:
        case RingKind::localized_integers: return rat_ == o.rat_;
        case RingKind::prime_field: return res_ == o.res_;
        case RingKind::univariate_poly: return num_ == o.num_;
        case RingKind::localized_poly: return num_ == o.num_ && den_ == o.den_;
        }
        return false;
    }
    bool operator!=(const RElem& o) const { return !(*this == o); }

    bool is_unit() const {
        switch (ring_.kind()) {
        case RingKind::rationals:
        case RingKind::prime_field: return !is_zero();
        case RingKind::integers: return int_ == 1 || int_ == -1;
        case RingKind::univariate_poly: return num_.is_constant() && !num_.is_zero();
        case RingKind::localized_poly: return !num_.constant_term().is_zero();
        case RingKind::localized_integers:
            return rat_ != 0 && numerator(rat_) % ring_.p() != 0;
        }
        return false;
    }

    RElem inv_unit() const {
        if (!is_unit()) throw not_a_unit_error("not a unit in " + ring_.str() + ": " + str());
        RElem e(ring_);
        switch (ring_.kind()) {
        case RingKind::rationals:
        case RingKind::localized_integers: e.rat_ = Rat(1) / rat_; break;
        case RingKind::prime_field: e.res_ = detail::inv_mod(res_, ring_.p()); break;
        case RingKind::integers: e.int_ = int_; break; // +-1 are self-inverse
        case RingKind::univariate_poly:
            e.num_ = Poly::constant(1, num_.constant_term().inverse());
            e.den_ = den_;
            break;
        case RingKind::localized_poly:
            e.num_ = den_;
            e.den_ = num_;
            e.canonicalize_frac();
            break;
        }
        return e;
    }

    /// m-adic order. Defined for the localized rings only.
    Valuation valuation() const {
        switch (ring_.kind()) {
        case RingKind::localized_poly:
            return num_.is_zero() ? Valuation::infinity()
                                  : Valuation::finite(num_.low_degree());
        case RingKind::localized_integers:
            return rat_ == 0 ? Valuation::infinity()
                             : Valuation::finite(padic_valuation(numerator(rat_), Int(ring_.p())));
        default:
            throw unsupported_ring_error("valuation requires a localized ring, got " + ring_.str());
        }
    }

    /// Image in the residue field A/m (local rings; identity on fields).
    RElem residue() const {
        const Ring k = ring_.residue_field();
        switch (ring_.kind()) {
        case RingKind::rationals:
        case RingKind::prime_field: return *this;
        case RingKind::localized_poly: {
            const Scalar v = num_.constant_term() / den_.constant_term();
            return of_scalar(k, v);
        }
        case RingKind::localized_integers: {
            const std::int64_t n = detail::mod_reduce(numerator(rat_), ring_.p());
            const std::int64_t d = detail::mod_reduce(denominator(rat_), ring_.p());
            return of_residue(k, Int(detail::mul_mod(n, detail::inv_mod(d, ring_.p()), ring_.p())));
        }
        default:
            throw unsupported_ring_error("residue requires a local ring, got " + ring_.str());
        }
    }

    /// Euclidean division over the PID rings: a = q*b + r with r smaller
    /// than b (absolute value / degree / p-adic valuation; fields divide
    /// exactly).
    std::pair<RElem, RElem> divmod(const RElem& b) const;

    bool divisible_by(const RElem& b) const;

    /// Exact quotient; throws when b does not divide this element.
    RElem exact_div(const RElem& b) const;

    /// Pivot metric for Smith reduction: |a| over Z, degree over k[x],
    /// p-adic valuation over Z_(p), 0 over fields. Nonzero elements only.
    Int euclidean_size() const {
        if (is_zero()) throw error("euclidean size of zero");
        switch (ring_.kind()) {
        case RingKind::rationals:
        case RingKind::prime_field: return 0;
        case RingKind::integers: return abs_int(int_);
        case RingKind::univariate_poly: return num_.degree_in(0);
        case RingKind::localized_integers: return valuation().value();
        default:
            throw unsupported_ring_error("no Euclidean structure on " + ring_.str());
        }
    }

    /// Unit u such that u * this is in canonical form: nonnegative over Z,
    /// monic over k[x], a power of p over Z_(p), 1 over fields.
    RElem canonical_unit() const {
        if (is_zero()) return one(ring_);
        switch (ring_.kind()) {
        case RingKind::rationals:
        case RingKind::prime_field: return inv_unit();
        case RingKind::integers: return from_int(ring_, int_ < 0 ? -1 : 1);
        case RingKind::univariate_poly: {
            RElem u(ring_);
            u.num_ = Poly::constant(1, num_.coeff_in(0, num_.degree_in(0)).constant_term().inverse());
            u.den_ = Poly::constant(1, Scalar::one(ring_.p()));
            return u;
        }
        case RingKind::localized_integers: {
            Rat pk = 1;
            for (long long i = 0; i < valuation().value(); ++i) pk *= ring_.p();
            RElem u(ring_);
            u.rat_ = pk / rat_;
            return u;
        }
        default:
            throw unsupported_ring_error("no canonical form on " + ring_.str());
        }
    }

    /// Display form (not the interchange grammar).
    std::string str() const {
        switch (ring_.kind()) {
        case RingKind::integers: return int_.str();
        case RingKind::rationals:
        case RingKind::localized_integers: {
            const Int n = numerator(rat_), d = denominator(rat_);
            return d == 1 ? n.str() : n.str() + "/" + d.str();
        }
        case RingKind::prime_field: return std::to_string(res_);
        case RingKind::univariate_poly: return num_.str(ring_.var_names());
        case RingKind::localized_poly: {
            const auto names = ring_.var_names();
            if (den_.is_constant()) return num_.str(names);
            return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
        }
        }
        return "?";
    }

private:
    explicit RElem(const Ring& r) : ring_(r), int_(0), rat_(0), res_(0) {}

    void check(const RElem& o) const {
        if (ring_ != o.ring_)
            throw ring_mismatch_error("elements of " + ring_.str() + " and " + o.ring_.str());
    }

    static void check_poly_shape(const Ring& r, const Poly& f) {
        if (f.nvars() != r.num_vars() || f.characteristic() != r.p())
            throw ring_mismatch_error("polynomial shape does not match " + r.str());
    }

    /// Reduce num/den by their gcd and scale so den(0) = 1.
    void canonicalize_frac() {
        if (num_.is_zero()) {
            den_ = Poly::constant(ring_.num_vars(), Scalar::one(ring_.p()));
            return;
        }
        const Poly g = Poly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *Poly::try_exact_div(num_, g);
            den_ = *Poly::try_exact_div(den_, g);
        }
        const Scalar c = den_.constant_term();
        if (c.is_zero()) throw error("denominator lost unit status during reduction");
        if (!c.is_one()) {
            const Scalar ci = c.inverse();
            num_ = num_ * ci;
            den_ = den_ * ci;
        }
    }

    Ring ring_;
    Int int_;
    Rat rat_;
    std::int64_t res_ = 0;
    Poly num_;
    Poly den_;
};

inline std::pair<RElem, RElem> RElem::divmod(const RElem& b) const {
    check(b);
    if (b.is_zero()) throw error("division by zero");
    switch (ring_.kind()) {
    case RingKind::rationals:
    case RingKind::prime_field:
        return {*this * b.inv_unit(), zero(ring_)};
    case RingKind::integers: {
        Int q = int_ / b.int_;
        Int r = int_ - q * b.int_;
        // balanced remainder keeps Smith reduction pivots small
        if (abs_int(r) * 2 > abs_int(b.int_)) {
            if ((r < 0) == (b.int_ < 0)) q += 1; else q -= 1;
            r = int_ - q * b.int_;
        }
        RElem qq(ring_), rr(ring_);
        qq.int_ = q;
        rr.int_ = r;
        return {qq, rr};
    }
    case RingKind::univariate_poly: {
        Poly q, r;
        Poly::divmod_in(num_, b.num_, 0, q, r);
        return {of_poly(ring_, q), of_poly(ring_, r)};
    }
    case RingKind::localized_integers: {
        if (is_zero()) return {zero(ring_), zero(ring_)};
        if (valuation().value() >= b.valuation().value()) {
            RElem q(ring_);
            q.rat_ = rat_ / b.rat_;
            return {q, zero(ring_)};
        }
        return {zero(ring_), *this};
    }
    default:
        throw unsupported_ring_error("division with remainder requires a PID, got " + ring_.str());
    }
}

inline bool RElem::divisible_by(const RElem& b) const {
    check(b);
    if (b.is_zero()) return is_zero();
    if (ring_.kind() == RingKind::localized_poly) {
        if (is_zero()) return true;
        // a/b lies in the ring iff the reduced denominator stays a unit
        Poly n = num_ * b.den_;
        Poly d = den_ * b.num_;
        const Poly g = Poly::gcd(n, d);
        if (!g.is_constant()) d = *Poly::try_exact_div(d, g);
        return !d.constant_term().is_zero();
    }
    return divmod(b).second.is_zero();
}

inline RElem RElem::exact_div(const RElem& b) const {
    check(b);
    if (b.is_zero()) throw error("division by zero");
    if (ring_.kind() == RingKind::localized_poly) {
        // quotient exists iff the reduced denominator stays a unit
        return of_frac(ring_, num_ * b.den_, den_ * b.num_);
    }
    auto [q, r] = divmod(b);
    if (!r.is_zero()) throw error("inexact division in " + ring_.str());
    return q;
}

} // namespace perplex
