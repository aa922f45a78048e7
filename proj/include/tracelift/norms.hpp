#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "tracelift/lifting.hpp"

namespace tracelift {

/// Sobolev index pair with its trace-order context.
struct SobolevIndex {
    double s = 2.0;
    double q = 2.0;
    int m = 1;
};

/**
 * Admissibility of (s, q) for order-m traces: q in (1, inf), s >= m+1, and
 * s - 1/q not an integer unless q = 2. Integrality of float input is decided
 * to 1e-9.
 */
inline bool admissible(double s, double q, int m) {
    if (!(q > 1.0) || !std::isfinite(q)) return false;
    if (s < m + 1) return false;
    if (std::abs(q - 2.0) < 1e-12) return true;
    double v = s - 1.0 / q;
    return std::abs(v - std::round(v)) > 1e-9;
}

inline bool admissible(const SobolevIndex& idx) { return admissible(idx.s, idx.q, idx.m); }

/**
 * Quadrature controls: Gauss points per direction on each cell, geometric
 * subdivision depth toward singular endpoints (ratio 1/2), and the bit
 * precision used when converting exact coefficients to floating point.
 */
struct QuadratureSpec {
    int order = 12;
    int grading = 60;
    int precision = 64;
};

namespace quad {

/// Gauss-Legendre nodes/weights on [0,1], cached per order.
inline const std::vector<std::pair<double, double>>& gauss(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    static std::mutex lock;
    std::lock_guard<std::mutex> g(lock);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::pair<double, double>> nodes(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = {0.5 * (1.0 - x), 1.0 / ((1.0 - x * x) * dp * dp)};
    }
    return cache.emplace(n, std::move(nodes)).first->second;
}

/// Composite Gauss over [a, b] with uniform cells.
template <typename F>
double integrate(F&& f, double a, double b, int order, int cells) {
    const auto& g = gauss(order);
    double total = 0.0;
    double width = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        double lo = a + c * width;
        for (const auto& [x, w] : g) total += w * f(lo + x * width);
    }
    return total * width;
}

/// Integral over (0, 1) with geometric grading toward 0 of the given depth.
template <typename F>
double integrate_graded_left(F&& f, int order, int depth) {
    double total = 0.0;
    double hi = 1.0;
    for (int j = 0; j < depth; ++j) {
        double lo = hi * 0.5;
        total += integrate(f, lo, hi, order, 1);
        hi = lo;
    }
    total += integrate(f, 0.0, hi, order, 1);
    return total;
}

/**
 * Integral over (0, 1) graded toward both endpoints (split at 1/2). The
 * right half is supplied reflected: f_right(t) is the integrand at 1 - t,
 * so the endpoint distance stays exactly representable.
 */
template <typename FL, typename FR>
double integrate_graded_both(FL&& f_left, FR&& f_right, int order, int depth) {
    double total = 0.0;
    double hi = 0.5;
    for (int j = 0; j < depth; ++j) {
        double lo = hi * 0.5;
        total += integrate(f_left, lo, hi, order, 1);
        total += integrate(f_right, lo, hi, order, 1);
        hi = lo;
    }
    total += integrate(f_left, 0.0, hi, order, 1);
    total += integrate(f_right, 0.0, hi, order, 1);
    return total;
}

/// Dense double-coefficient view of a BiPoly for fast repeated evaluation.
struct Dense2 {
    int dx = 0, dy = 0;
    std::vector<double> c; // c[i * (dy+1) + j]

    explicit Dense2(const BiPoly& p) {
        for (const auto& [k, v] : p.terms()) {
            dx = std::max(dx, k.first);
            dy = std::max(dy, k.second);
        }
        c.assign(static_cast<std::size_t>(dx + 1) * (dy + 1), 0.0);
        for (const auto& [k, v] : p.terms()) c[k.first * (dy + 1) + k.second] = to_double(v);
    }

    double operator()(double x, double y) const {
        double acc = 0.0;
        for (int i = dx; i >= 0; --i) {
            double row = 0.0;
            const double* rc = &c[i * (dy + 1)];
            for (int j = dy; j >= 0; --j) row = row * y + rc[j];
            acc = acc * x + row;
        }
        return acc;
    }
};

inline double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/**
 * Integral of G over the reference triangle via the Duffy map
 * (u, v) -> (u(1-v), v), Jacobian (1-v), composite tensor Gauss.
 */
template <typename F>
double integrate_triangle(F&& G, const QuadratureSpec& spec) {
    int cells = std::max(2, spec.grading / 6);
    const auto& g = gauss(spec.order);
    double total = 0.0;
    double width = 1.0 / cells;
    for (int cu = 0; cu < cells; ++cu)
        for (const auto& [xu, wu] : g) {
            double u = (cu + xu) * width;
            for (int cv = 0; cv < cells; ++cv)
                for (const auto& [xv, wv] : g) {
                    double v = (cv + xv) * width;
                    total += wu * wv * G(u * (1.0 - v), v) * (1.0 - v);
                }
        }
    return total * width * width;
}

} // namespace quad

/// W^{k,q}(T) norm: exact differentiation, then quadrature over the triangle.
inline double triangle_norm(const BiPoly& u, int k, double q, const QuadratureSpec& spec) {
    double total = 0.0;
    std::vector<BiPoly> row{u};
    for (int j = 0; j <= k; ++j) {
        for (const auto& d : row) {
            quad::Dense2 dd(d);
            total += quad::integrate_triangle(
                [&](double x, double y) { return std::pow(std::abs(dd(x, y)), q); }, spec);
        }
        if (j == k) break;
        std::vector<BiPoly> next;
        next.reserve(row.size() + 1);
        next.push_back(partial(row.front(), 0)); // d^{j+1} ordered as x^{j+1-i} y^i
        for (const auto& d : row) next.push_back(partial(d, 1));
        row = std::move(next);
    }
    return std::pow(total, 1.0 / q);
}

namespace detail {

/// Arc-length tangential derivative of order k of edge data, in-parameter.
inline UniPoly tangential_power(const UniPoly& f, int edge, int k) {
    Scalar inv_len = Scalar(1) / edge_frame(edge).length;
    UniPoly g = f;
    for (int j = 0; j < k; ++j) g = inv_len * derivative(g);
    return g;
}

/// integral over gamma_i of |g|^q ds  (g given in the phi_i parameter).
inline double edge_lq_pow(const UniPoly& g, double q, int edge, const QuadratureSpec& spec) {
    if (g.is_zero()) return 0.0;
    auto c = g.coeffs_as_double();
    double L = to_double(edge_frame(edge).length);
    int cells = std::max(2, spec.grading / 6);
    return L * quad::integrate(
                   [&](double h) { return std::pow(std::abs(quad::horner(c, h)), q); }, 0.0, 1.0,
                   spec.order, cells);
}

/**
 * Slobodeckij seminorm (power q) of g on gamma_i with fractional index beta:
 * the double integral of |g(x)-g(y)|^q / |x-y|^{beta q + 1} in arc length,
 * reduced to (h, delta) with geometric grading toward delta = 0. The
 * difference quotient (g(h+delta) - g(h)) / delta is expanded exactly first,
 * so deep grading cells see no floating cancellation.
 */
inline double edge_seminorm_pow(const UniPoly& g, double beta, double q, int edge,
                                const QuadratureSpec& spec) {
    if (g.is_zero() || !g.degree() || *g.degree() == 0) return 0.0;
    // G(h, delta) with g(h+delta) - g(h) = delta * G
    BiPoly G;
    for (int k = 1; k <= *g.degree(); ++k) {
        Scalar a = g.coeff(k);
        if (a.is_zero()) continue;
        for (int i = 0; i < k; ++i)
            G.add_term(i, k - 1 - i, a * Scalar(mpq_class(binom_z(k, i))));
    }
    quad::Dense2 Gd(G);
    double L = to_double(edge_frame(edge).length);
    int inner_cells = std::max(2, spec.order / 4);
    auto inner = [&](double delta) {
        double iv = quad::integrate(
            [&](double h) { return std::pow(std::abs(Gd(h, delta)), q); }, 0.0, 1.0 - delta,
            spec.order, inner_cells);
        return iv * std::pow(delta, q * (1.0 - beta) - 1.0);
    };
    double J = 2.0 * quad::integrate_graded_left(inner, spec.order, spec.grading);
    return std::pow(L, 1.0 - beta * q) * J;
}

inline double edge_norm_pow(const UniPoly& f, double s, double q, int edge,
                            const QuadratureSpec& spec) {
    int k = static_cast<int>(std::floor(s + 1e-12));
    double beta = s - k;
    if (beta < 1e-12) {
        // integer index: sum of L^q norms of tangential derivatives 0..k
        double total = 0.0;
        for (int j = 0; j <= k; ++j)
            total += edge_lq_pow(tangential_power(f, edge, j), q, edge, spec);
        return total;
    }
    double total = 0.0;
    for (int j = 0; j <= k; ++j) total += edge_lq_pow(tangential_power(f, edge, j), q, edge, spec);
    total += edge_seminorm_pow(tangential_power(f, edge, k), beta, q, edge, spec);
    return total;
}

} // namespace detail

/**
 * Sobolev-Slobodeckij norm W^{s,q}(gamma_i) of edge data given in the phi_i
 * parameter; fractional part contributes the double-integral seminorm of the
 * floor(s)-th tangential derivative.
 */
inline double edge_norm(const UniPoly& f, double s, double q, int edge,
                        const QuadratureSpec& spec) {
    return std::pow(detail::edge_norm_pow(f, s, q, edge, spec), 1.0 / q);
}

enum class WeightKind { left, both };

/**
 * The weighted strengthening used at the critical exponent: the q-norm of
 * d_{i+1}^{-1/q} dt^k f (kind left) or (d_{i+1} d_{i+2})^{-1/q} dt^k f
 * (kind both) on gamma_i. Divergence is decided exactly from the vanishing
 * order of the integrand at the weighted endpoint(s) and reported as +inf;
 * quadrature never sees a divergent integral.
 */
inline double weighted_edge_norm(const UniPoly& f, WeightKind kind, int k, double q, int edge,
                                 const QuadratureSpec& spec) {
    UniPoly g = detail::tangential_power(f, edge, k);
    if (g.is_zero()) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    if (!vanishing_order(g, Scalar(0)).at_least(1)) return inf;
    if (kind == WeightKind::both && !vanishing_order(g, Scalar(1)).at_least(1)) return inf;

    auto c = g.coeffs_as_double();
    double L = to_double(edge_frame(edge).length);
    double value;
    if (kind == WeightKind::left) {
        // integral of d^{-1} |g|^q ds = integral_0^1 h^{-1} |g(h)|^q dh
        value = quad::integrate_graded_left(
            [&](double h) { return std::pow(std::abs(quad::horner(c, h)), q) / h; }, spec.order,
            spec.grading);
    } else {
        // reflect exactly for the right half so t is the endpoint distance
        auto cr = compose_affine(g, Scalar(1), Scalar(-1)).coeffs_as_double();
        value = quad::integrate_graded_both(
                    [&](double t) {
                        return std::pow(std::abs(quad::horner(c, t)), q) / (t * (1.0 - t));
                    },
                    [&](double t) {
                        return std::pow(std::abs(quad::horner(cr, t)), q) / (t * (1.0 - t));
                    },
                    spec.order, spec.grading) /
                L;
    }
    return std::pow(value, 1.0 / q);
}

/**
 * Vertex integral I_i^q(f, g) = int_0^1 h^{-1} |f(a_i - h t_{i+1}) -
 * g(a_i + h t_{i+2})|^q dh for scalar edge functions approaching a_i along
 * gamma_{i+1} and gamma_{i+2} (phi-parameter inputs). +inf unless the two
 * vertex values agree exactly.
 */
inline double vertex_integral(const UniPoly& f, const UniPoly& g, int vertex, double q,
                              const QuadratureSpec& spec) {
    if (f(Scalar(1)) != g(Scalar(0))) return std::numeric_limits<double>::infinity();
    // exact difference along the two arc-length rays out of a_i; its constant
    // coefficient is exactly zero, so h^{-1}|D|^q evaluates stably
    Scalar inv_la = Scalar(1) / edge_frame(mod3(vertex + 1)).length;
    Scalar inv_lb = Scalar(1) / edge_frame(mod3(vertex + 2)).length;
    UniPoly D = compose_affine(f, Scalar(1), -inv_la) - compose_affine(g, Scalar(0), inv_lb);
    if (D.is_zero()) return 0.0;
    auto cd = D.coeffs_as_double();
    return quad::integrate_graded_left(
        [&](double h) { return std::pow(std::abs(quad::horner(cd, h)), q) / h; }, spec.order,
        spec.grading);
}

namespace detail {

/**
 * Tensor-valued vertex integral at a_i: the contracted derivatives of
 * sigma^m on the two incoming edges, compared in the Frobenius norm.
 */
inline double tensor_vertex_term(const BoundaryData& F, int vertex, int l, double q,
                                 const QuadratureSpec& spec) {
    int ea = mod3(vertex + 1), eb = mod3(vertex + 2);
    TraceTensor SA = sigma(F, ea, F.m), SB = sigma(F, eb, F.m);
    for (int d = 0; d < l; ++d) {
        SA = SA.tangential_derivative();
        SB = SB.tangential_derivative();
    }
    TraceTensor A = SA.contract(edge_frame(eb).tangent, l);
    TraceTensor B = SB.contract(edge_frame(ea).tangent, l);

    int n = F.m - l;
    Scalar inv_la = Scalar(1) / edge_frame(ea).length;
    Scalar inv_lb = Scalar(1) / edge_frame(eb).length;
    std::vector<std::vector<double>> cd(n + 1);
    std::vector<double> mult(n + 1);
    bool all_zero = true;
    for (int j = 0; j <= n; ++j) {
        UniPoly aj = A.cartesian_component(j), bj = B.cartesian_component(j);
        if (aj(Scalar(1)) != bj(Scalar(0))) return std::numeric_limits<double>::infinity();
        UniPoly D = compose_affine(aj, Scalar(1), -inv_la) - compose_affine(bj, Scalar(0), inv_lb);
        all_zero = all_zero && D.is_zero();
        cd[j] = D.coeffs_as_double();
        mult[j] = static_cast<double>(TraceTensor::binom(n, j));
    }
    if (all_zero) return 0.0;
    return quad::integrate_graded_left(
        [&](double h) {
            double fro = 0.0;
            for (int j = 0; j <= n; ++j) {
                double d = quad::horner(cd[j], h);
                fro += mult[j] * d * d;
            }
            return std::pow(fro, 0.5 * q) / h;
        },
        spec.order, spec.grading);
}

} // namespace detail

/**
 * The boundary data norm: edge norms of every f_i^k at index s - k - 1/q,
 * plus the vertex integral of the contracted sigma^m tangential derivatives
 * whenever (s - m - l) q = 2 for some l in 0..m.
 */
inline double data_norm(const BoundaryData& F, double s, double q, const QuadratureSpec& spec) {
    if (!admissible(s, q, F.m))
        throw InadmissibleIndex("(s, q) = (" + std::to_string(s) + ", " + std::to_string(q) +
                                ") not admissible for m = " + std::to_string(F.m));
    double total = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int k = 0; k <= F.m; ++k)
            total += detail::edge_norm_pow(F.f(i, k), s - k - 1.0 / q, q, i, spec);
    for (int l = 0; l <= F.m; ++l) {
        if (std::abs((s - F.m - l) * q - 2.0) > 1e-9) continue;
        for (int i = 1; i <= 3; ++i) total += detail::tensor_vertex_term(F, i, l, q, spec);
    }
    return std::pow(total, 1.0 / q);
}

/// Empirical stability quotient ||u||_{s,q,T} / ||F||_{X_m^{s,q}}.
inline double stability_ratio(const BiPoly& u_lifted, const BoundaryData& F, int s, double q,
                              const QuadratureSpec& spec) {
    if (F.is_zero()) throw std::invalid_argument("stability ratio needs nonzero boundary data");
    return triangle_norm(u_lifted, s, q, spec) / data_norm(F, s, q, spec);
}

/**
 * Both sides of the weighted L^q bound for E_m: lhs = ||E_m(f)||_{q,T},
 * rhs = (q / ((q-1) m!)) ||tau^{-m} b||_inf ||f||_{q,I,mq+1}. Callers assert
 * lhs <= rhs up to tolerance.
 */
inline std::pair<double, double> hardy_bound_check(int m, double q, const UniPoly& f,
                                                   const KernelMoments& kernel,
                                                   const QuadratureSpec& spec) {
    double sup = kernel.sup_weighted(m); // throws UnboundedWeight for m > N
    if (f.is_zero()) return {0.0, 0.0};

    quad::Dense2 u(e_lift_edge1(kernel, m, f));
    double lhs = std::pow(
        quad::integrate_triangle([&](double x, double y) { return std::pow(std::abs(u(x, y)), q); },
                                 spec),
        1.0 / q);

    auto c = f.coeffs_as_double();
    int cells = std::max(2, spec.grading / 6);
    double wnorm = std::pow(
        quad::integrate(
            [&](double t) {
                return std::pow(std::abs(quad::horner(c, t)), q) * std::pow(t, m * q + 1.0);
            },
            0.0, 1.0, spec.order, cells),
        1.0 / q);

    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    double rhs = q / ((q - 1.0) * fact) * sup * wnorm;
    return {lhs, rhs};
}

} // namespace tracelift
