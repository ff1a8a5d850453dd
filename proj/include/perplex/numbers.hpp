#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "perplex/errors.hpp"

namespace perplex {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

/// p-adic valuation of a nonzero integer.
inline long long padic_valuation(Int a, const Int& p) {
    long long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

inline bool is_prime_int64(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace detail {

inline std::int64_t mod_reduce(const Int& v, std::int64_t p) {
    Int r = v % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    // extended Euclid; a must be nonzero mod p
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    if (new_r < 0) new_r += p;
    if (new_r == 0) throw not_a_unit_error("inverse of 0 in GF(p)");
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return t;
}

} // namespace detail

/// Element of one of the base fields: the rationals (p == 0) or GF(p).
/// Every value carries its field so mixed-field operations can be rejected.
class Scalar {
public:
    Scalar() : p_(0), q_(0), r_(0) {}

    static Scalar rational(Rat v) {
        Scalar s;
        s.p_ = 0;
        s.q_ = std::move(v);
        return s;
    }

    static Scalar residue(const Int& v, std::int64_t p) {
        Scalar s;
        s.p_ = p;
        s.r_ = detail::mod_reduce(v, p);
        return s;
    }

    static Scalar zero(std::int64_t p) { return p == 0 ? rational(Rat(0)) : residue(0, p); }
    static Scalar one(std::int64_t p) { return p == 0 ? rational(Rat(1)) : residue(1, p); }
    static Scalar of_int(long long v, std::int64_t p) {
        return p == 0 ? rational(Rat(v)) : residue(Int(v), p);
    }

    std::int64_t characteristic() const { return p_; }
    bool over_rationals() const { return p_ == 0; }

    bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    const Rat& rat() const { return q_; }
    std::int64_t res() const { return r_; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ + o.q_) : residue(Int(r_ + o.r_), p_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ - o.q_) : residue(Int(r_ - o.r_), p_);
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ * o.q_) : residue(Int(detail::mul_mod(r_, o.r_, p_)), p_);
    }
    Scalar operator-() const { return p_ == 0 ? rational(-q_) : residue(Int(-r_), p_); }

    Scalar inverse() const {
        if (is_zero()) throw not_a_unit_error("division by zero scalar");
        return p_ == 0 ? rational(Rat(1) / q_) : residue(Int(detail::inv_mod(r_, p_)), p_);
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const {
        return p_ == o.p_ && (p_ == 0 ? q_ == o.q_ : r_ == o.r_);
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical decimal text: "a/b" (b omitted when 1) over the rationals,
    /// the residue over GF(p).
    std::string str() const {
        if (p_ != 0) return std::to_string(r_);
        const Int n = numerator(q_), d = denominator(q_);
        if (d == 1) return n.str();
        return n.str() + "/" + d.str();
    }

    static Scalar parse(const std::string& text, std::int64_t p);

private:
    void check(const Scalar& o) const {
        if (p_ != o.p_) throw ring_mismatch_error("scalars from different base fields");
    }

    std::int64_t p_; // 0 = rationals
    Rat q_;
    std::int64_t r_;
};

inline Scalar Scalar::parse(const std::string& text, std::int64_t p) {
    if (text.empty()) throw parse_error("empty scalar literal");
    const auto parse_int = [](const std::string& s) -> Int {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw parse_error("bad integer literal: " + s);
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw parse_error("bad integer literal: " + s);
        return Int(s);
    };
    const auto slash = text.find('/');
    if (p != 0) {
        if (slash != std::string::npos) throw parse_error("GF(p) literal cannot be a fraction: " + text);
        return residue(parse_int(text), p);
    }
    if (slash == std::string::npos) return rational(Rat(parse_int(text)));
    const Int num = parse_int(text.substr(0, slash));
    const Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator: " + text);
    return rational(Rat(num) / Rat(den));
}

} // namespace perplex
