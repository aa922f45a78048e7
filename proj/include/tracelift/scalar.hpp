#pragma once

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "tracelift/errors.hpp"

namespace tracelift {

/**
 * Element of Q(sqrt2): rat + surd * sqrt(2) with arbitrary-precision rational
 * parts, stored fully reduced with positive denominators (GMP canonical form).
 *
 * This is the coefficient field of every exact computation in the library.
 * sqrt(2) enters the construction only through the hypotenuse: the unit
 * vectors of edge 2 and the 2^{-m/2} scaling of operators rotated onto it.
 */
class Scalar {
public:
    Scalar() : rat_(0), surd_(0) {}
    Scalar(int v) : rat_(v), surd_(0) {}
    Scalar(long v) : rat_(v), surd_(0) {}
    explicit Scalar(mpq_class rat, mpq_class surd = mpq_class(0))
        : rat_(std::move(rat)), surd_(std::move(surd)) {
        rat_.canonicalize();
        surd_.canonicalize();
    }

    static Scalar rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }
    static Scalar sqrt2() { return Scalar(mpq_class(0), mpq_class(1)); }

    // (sqrt2)^e for any integer e, e.g. e = -m for the edge-2 operator scaling.
    static Scalar sqrt2_pow(int e) {
        mpq_class two(2);
        bool odd = (e % 2) != 0;
        int half = (e - (odd ? 1 : 0)) / 2; // e = 2*half + (odd ? 1 : 0)
        mpq_class p(1);
        for (int i = 0; i < (half >= 0 ? half : -half); ++i) p *= two;
        if (half < 0) p = 1 / p;
        return odd ? Scalar(mpq_class(0), p) : Scalar(p);
    }

    const mpq_class& rat() const { return rat_; }
    const mpq_class& surd() const { return surd_; }

    bool is_zero() const { return rat_ == 0 && surd_ == 0; }
    bool is_rational() const { return surd_ == 0; }

    Scalar conjugate() const { return Scalar(rat_, -surd_); }

    Scalar operator-() const { return Scalar(-rat_, -surd_); }

    Scalar& operator+=(const Scalar& o) {
        rat_ += o.rat_;
        surd_ += o.surd_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        rat_ -= o.rat_;
        surd_ -= o.surd_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r,  r = sqrt2
        // snapshot both operands: o may alias *this
        mpq_class a = rat_, b = surd_, c = o.rat_, d = o.surd_;
        rat_ = a * c + 2 * b * d;
        surd_ = a * d + b * c;
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw DivisionByZero();
        // multiply by the conjugate; c^2 - 2 d^2 = 0 only for c = d = 0
        mpq_class nrm = o.rat_ * o.rat_ - 2 * o.surd_ * o.surd_;
        *this *= o.conjugate();
        rat_ /= nrm;
        surd_ /= nrm;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.rat_ == b.rat_ && a.surd_ == b.surd_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(int e) const {
        if (e < 0) return (Scalar(1) / *this).pow(-e);
        Scalar out(1), base = *this;
        while (e > 0) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    // Canonical text form: "a/b", "c/d*r2", or "a/b+c/d*r2" (denominator 1 omitted).
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (rat_ != 0) out += rat_.get_str();
        if (surd_ != 0) {
            if (surd_ > 0 && !out.empty()) out += '+';
            out += surd_.get_str();
            out += "*r2";
        }
        return out;
    }

    static Scalar parse(std::string_view text);

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    mpq_class rat_;
    mpq_class surd_;
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }
inline Scalar operator*(const Scalar& a, long b) { return a * Scalar(b); }

namespace detail {

inline mpq_class parse_rational_token(std::string_view tok) {
    // tok: digits [ '/' digits ]
    auto slash = tok.find('/');
    std::string_view num = tok.substr(0, slash == std::string_view::npos ? tok.size() : slash);
    std::string_view den =
        slash == std::string_view::npos ? std::string_view("1") : tok.substr(slash + 1);
    if (num.empty() || den.empty()) throw ParseError("empty numerator or denominator");
    for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad digit in scalar");
    for (char c : den)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad digit in scalar");
    mpq_class q{mpz_class(std::string(num)), mpz_class(std::string(den))};
    if (q.get_den() == 0) throw ParseError("zero denominator");
    q.canonicalize();
    return q;
}

} // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty scalar");
    if (s == "0") return Scalar();

    mpq_class rat(0), surd(0);
    bool have_rat = false, have_surd = false;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected '+' or '-' between scalar terms: " + s);
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string_view term(s.data() + i, j - i);
        bool is_surd = false;
        if (term.size() >= 3 && term.substr(term.size() - 3) == "*r2") {
            is_surd = true;
            term = term.substr(0, term.size() - 3);
        }
        mpq_class val = detail::parse_rational_token(term);
        if (sign < 0) val = -val;
        if (is_surd) {
            if (have_surd) throw ParseError("duplicate sqrt2 term: " + s);
            surd = val;
            have_surd = true;
        } else {
            if (have_rat) throw ParseError("duplicate rational term: " + s);
            rat = val;
            have_rat = true;
        }
        i = j;
    }
    return Scalar(rat, surd);
}

/**
 * Floating approximation of rat + surd*sqrt2 with relative error <= 2^(1-bits).
 *
 * The two parts can cancel, so the working precision is raised until the
 * result magnitude is safely above the accumulated rounding level; the value
 * itself is never exactly zero unless both parts are (sqrt2 is irrational).
 */
inline mpf_class to_float(const Scalar& x, mp_bitcnt_t bits) {
    if (x.is_zero()) return mpf_class(0, bits);
    mp_bitcnt_t work = bits + 32;
    for (;;) {
        mpf_class a(x.rat(), work), b(x.surd(), work);
        mpf_class r2(2, work);
        mpf_sqrt(r2.get_mpf_t(), r2.get_mpf_t());
        mpf_class value = a + b * r2;
        mpf_class magnitude = abs(a) + abs(b) * r2;
        mpf_class thr(magnitude, work);
        mpf_div_2exp(thr.get_mpf_t(), thr.get_mpf_t(), work - bits - 8);
        if (abs(value) > thr) return mpf_class(value, bits);
        work *= 2;
    }
}

inline double to_double(const Scalar& x) { return to_float(x, 64).get_d(); }

} // namespace tracelift
