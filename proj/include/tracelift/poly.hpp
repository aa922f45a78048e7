#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "tracelift/scalar.hpp"

namespace tracelift {

/// Exact 2-vector (points, tangents, normals, derivative directions).
struct Vec2 {
    Scalar x, y;

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const Scalar& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

inline Scalar dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Exact 2x2 matrix, row major.
struct Mat2 {
    Scalar a00, a01, a10, a11;

    Vec2 operator*(const Vec2& v) const {
        return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y};
    }
};

/**
 * Univariate polynomial in the edge parameter h in [0,1], coefficients in
 * Q(sqrt2), index k holding the coefficient of h^k. Trailing zeros trimmed;
 * the zero polynomial has empty storage and no degree.
 */
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(Scalar v) { return UniPoly({std::move(v)}); }
    static UniPoly monomial(int k, Scalar v = Scalar(1)) {
        std::vector<Scalar> c(static_cast<std::size_t>(k) + 1);
        c.back() = std::move(v);
        return UniPoly(std::move(c));
    }
    /// tau: h |-> h
    static UniPoly tau() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Scalar(0);
    }

    Scalar operator()(const Scalar& h) const {
        Scalar acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * h + *it;
        return acc;
    }

    UniPoly operator-() const {
        UniPoly out = *this;
        for (auto& v : out.c_) v = -v;
        return out;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const Scalar& s, UniPoly p) {
        for (auto& v : p.c_) v = s * v;
        p.trim();
        return p;
    }
    friend UniPoly operator*(UniPoly p, const Scalar& s) { return s * std::move(p); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    std::vector<double> coeffs_as_double() const {
        std::vector<double> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = to_double(c_[i]);
        return out;
    }

private:
    std::vector<Scalar> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

inline UniPoly derivative(const UniPoly& p) {
    auto deg = p.degree();
    if (!deg || *deg == 0) return UniPoly();
    std::vector<Scalar> c(static_cast<std::size_t>(*deg));
    for (int k = 1; k <= *deg; ++k) c[k - 1] = Scalar(k) * p.coeff(k);
    return UniPoly(std::move(c));
}

inline UniPoly pow(const UniPoly& p, int e) {
    UniPoly out = UniPoly::constant(Scalar(1));
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

/**
 * Order of vanishing at a point: the largest v with (h-c)^v dividing the
 * polynomial; infinite for the zero polynomial.
 */
struct VanishingOrder {
    bool infinite = false;
    int order = 0;

    static VanishingOrder finite(int v) { return {false, v}; }
    static VanishingOrder infinity() { return {true, 0}; }

    bool at_least(int r) const { return infinite || order >= r; }
    friend bool operator==(const VanishingOrder& a, const VanishingOrder& b) {
        return a.infinite == b.infinite && (a.infinite || a.order == b.order);
    }
};

namespace detail {

// f = (h - c) * quotient + remainder, exact synthetic division.
inline std::pair<UniPoly, Scalar> divide_linear(const UniPoly& f, const Scalar& c) {
    auto deg = f.degree();
    if (!deg) return {UniPoly(), Scalar(0)};
    std::vector<Scalar> q(static_cast<std::size_t>(*deg));
    Scalar carry = f.coeff(*deg);
    for (int k = *deg - 1; k >= 0; --k) {
        q[k] = carry;
        carry = f.coeff(k) + c * carry;
    }
    return {UniPoly(std::move(q)), carry};
}

} // namespace detail

inline VanishingOrder vanishing_order(const UniPoly& f, const Scalar& c) {
    if (f.is_zero()) return VanishingOrder::infinity();
    UniPoly cur = f;
    int v = 0;
    for (;;) {
        auto [q, rem] = detail::divide_linear(cur, c);
        if (!rem.is_zero()) return VanishingOrder::finite(v);
        ++v;
        cur = std::move(q);
        if (cur.is_zero()) return VanishingOrder::finite(v); // f was a pure power of (h-c)
    }
}

/// f / (h-c)^r, exact; throws InsufficientVanishing if (h-c)^r does not divide f.
inline UniPoly divide_out(const UniPoly& f, const Scalar& c, int r) {
    UniPoly cur = f;
    for (int i = 0; i < r; ++i) {
        auto [q, rem] = detail::divide_linear(cur, c);
        if (!rem.is_zero())
            throw InsufficientVanishing("vanishing order at " + c.str() + " is " +
                                        std::to_string(i) + ", need " + std::to_string(r));
        cur = std::move(q);
    }
    return cur;
}

/**
 * Bivariate polynomial sum c_ij x^i y^j on the reference triangle, sparse
 * monomial map keyed by the exponent pair. Zero coefficients are never stored.
 */
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;

    static BiPoly constant(Scalar v) { return monomial(0, 0, std::move(v)); }
    static BiPoly monomial(int i, int j, Scalar v = Scalar(1)) {
        BiPoly p;
        p.add_term(i, j, std::move(v));
        return p;
    }
    /// x, y as polynomials
    static BiPoly var_x() { return monomial(1, 0); }
    static BiPoly var_y() { return monomial(0, 1); }

    void add_term(int i, int j, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = c_.try_emplace({i, j}, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    bool is_zero() const { return c_.empty(); }
    std::optional<int> total_degree() const {
        if (c_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [k, v] : c_) d = std::max(d, k.first + k.second);
        return d;
    }
    Scalar coeff(int i, int j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? Scalar(0) : it->second;
    }
    const std::map<Key, Scalar>& terms() const { return c_; }

    Scalar operator()(const Scalar& x, const Scalar& y) const {
        Scalar acc(0);
        for (const auto& [k, v] : c_) acc += v * x.pow(k.first) * y.pow(k.second);
        return acc;
    }

    BiPoly operator-() const {
        BiPoly out = *this;
        for (auto& [k, v] : out.c_) v = -v;
        return out;
    }
    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, v] : o.c_) add_term(k.first, k.second, v);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [k, v] : o.c_) add_term(k.first, k.second, -v);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_)
                out.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
        return out;
    }
    friend BiPoly operator*(const Scalar& s, const BiPoly& p) {
        BiPoly out;
        for (const auto& [k, v] : p.c_) out.add_term(k.first, k.second, s * v);
        return out;
    }
    friend BiPoly operator*(const BiPoly& p, const Scalar& s) { return s * p; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

private:
    std::map<Key, Scalar> c_;
};

inline BiPoly pow(const BiPoly& p, int e) {
    BiPoly out = BiPoly::constant(Scalar(1));
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

/// Partial derivative, axis 0 = x, 1 = y.
inline BiPoly partial(const BiPoly& p, int axis) {
    BiPoly out;
    for (const auto& [k, v] : p.terms()) {
        int e = axis == 0 ? k.first : k.second;
        if (e == 0) continue;
        if (axis == 0)
            out.add_term(k.first - 1, k.second, Scalar(e) * v);
        else
            out.add_term(k.first, k.second - 1, Scalar(e) * v);
    }
    return out;
}

/// Exact directional derivative along an exact 2-vector.
inline BiPoly derivative(const BiPoly& p, const Vec2& dir) {
    return dir.x * partial(p, 0) + dir.y * partial(p, 1);
}

namespace detail {

// Rows of coefficients c[i][j] of x^i y^j, for Horner-style substitution.
inline std::vector<std::vector<Scalar>> coefficient_rows(const BiPoly& p) {
    int dx = 0, dy = 0;
    for (const auto& [k, v] : p.terms()) {
        dx = std::max(dx, k.first);
        dy = std::max(dy, k.second);
    }
    std::vector<std::vector<Scalar>> rows(dx + 1, std::vector<Scalar>(dy + 1));
    for (const auto& [k, v] : p.terms()) rows[k.first][k.second] = v;
    return rows;
}

} // namespace detail

/// p(A (x,y) + b), expanded exactly (nested Horner in the two image forms).
inline BiPoly compose_affine(const BiPoly& p, const Mat2& A, const Vec2& b) {
    if (p.is_zero()) return BiPoly();
    BiPoly X, Y; // images of the coordinates
    X.add_term(1, 0, A.a00);
    X.add_term(0, 1, A.a01);
    X.add_term(0, 0, b.x);
    Y.add_term(1, 0, A.a10);
    Y.add_term(0, 1, A.a11);
    Y.add_term(0, 0, b.y);

    auto rows = detail::coefficient_rows(p);
    BiPoly out;
    for (auto ri = rows.rbegin(); ri != rows.rend(); ++ri) {
        BiPoly row_val;
        for (auto cj = ri->rbegin(); cj != ri->rend(); ++cj)
            row_val = row_val * Y + BiPoly::constant(*cj);
        out = out * X + row_val;
    }
    return out;
}

/// h |-> f(a + b h), expanded exactly.
inline UniPoly compose_affine(const UniPoly& f, const Scalar& a, const Scalar& b) {
    UniPoly arg({a, b});
    UniPoly out;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
        out = out * arg + UniPoly::constant(*it);
    return out;
}

/// h |-> p(x0 + h d), expanded exactly.
inline UniPoly substitute_line(const BiPoly& p, const Vec2& x0, const Vec2& d) {
    if (p.is_zero()) return UniPoly();
    UniPoly X({x0.x, d.x}), Y({x0.y, d.y});
    auto rows = detail::coefficient_rows(p);
    UniPoly out;
    for (auto ri = rows.rbegin(); ri != rows.rend(); ++ri) {
        UniPoly row_val;
        for (auto cj = ri->rbegin(); cj != ri->rend(); ++cj)
            row_val = row_val * Y + UniPoly::constant(*cj);
        out = out * X + row_val;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = 0; k <= *p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << p.coeff(k) << ")h^" << k;
        first = false;
    }
    return os;
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [k, v] : p.terms()) {
        if (!first) os << " + ";
        os << "(" << v << ")x^" << k.first << "y^" << k.second;
        first = false;
    }
    return os;
}

} // namespace tracelift
