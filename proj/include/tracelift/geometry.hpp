#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "tracelift/poly.hpp"

namespace tracelift {

/// Wrap an edge/vertex index onto {1, 2, 3}.
inline int mod3(int i) { return (i - 1) % 3 + 1; }

/// Triangle vertices: a_1 = (0,1), a_2 = (0,0), a_3 = (1,0).
inline Vec2 triangle_vertex(int i) {
    switch (mod3(i)) {
        case 1: return {Scalar(0), Scalar(1)};
        case 2: return {Scalar(0), Scalar(0)};
        default: return {Scalar(1), Scalar(0)};
    }
}

/**
 * Geometry of edge gamma_i: runs from a_{i+1} to a_{i+2} with the
 * parametrization phi_i(h) = (1-h) a_{i+1} + h a_{i+2}, unit tangent along
 * the edge, outward unit normal, and exact length (1, sqrt2, 1).
 */
struct EdgeFrame {
    int index;
    Vec2 start, end;  // a_{i+1}, a_{i+2}
    Vec2 tangent, normal;
    Scalar length;

    /// phi_i(h)
    Vec2 point(const Scalar& h) const { return start + h * (end - start); }
    /// direction vector of the parametrization, d phi / dh = length * tangent
    Vec2 span() const { return end - start; }
};

inline const EdgeFrame& edge_frame(int i) {
    static const std::array<EdgeFrame, 3> frames = [] {
        std::array<EdgeFrame, 3> out;
        for (int e = 1; e <= 3; ++e) {
            EdgeFrame f;
            f.index = e;
            f.start = triangle_vertex(e + 1);
            f.end = triangle_vertex(e + 2);
            Vec2 d = f.end - f.start;
            // lengths are 1, sqrt2, 1; dividing by them stays in Q(sqrt2)
            f.length = (e == 2) ? Scalar::sqrt2() : Scalar(1);
            Scalar inv = Scalar(1) / f.length;
            f.tangent = inv * d;
            f.normal = {f.tangent.y, -f.tangent.x}; // clockwise rotation points outward
            out[e - 1] = f;
        }
        return out;
    }();
    return frames[mod3(i) - 1];
}

/**
 * The j-th order normal derivative of u, restricted to gamma_i and expressed
 * in the phi_i parameter: h |-> (d/dn_i)^j u (phi_i(h)).
 */
inline UniPoly normal_trace(const BiPoly& u, int edge, int order) {
    const EdgeFrame& f = edge_frame(edge);
    BiPoly d = u;
    for (int j = 0; j < order; ++j) d = derivative(d, f.normal);
    return substitute_line(d, f.start, f.span());
}

/**
 * Boundary data of trace order m: per edge i, the tuple (f_i^0, ..., f_i^m)
 * of polynomials in the phi_i parameter, plus the declared degree p
 * (deg f_i^k <= p - k for compliant data).
 */
struct BoundaryData {
    int m = 0;
    int degree = 0;
    std::array<std::vector<UniPoly>, 3> edges; // edges[i-1][k] = f_i^k

    const UniPoly& f(int edge, int k) const { return edges[mod3(edge) - 1][k]; }
    UniPoly& f(int edge, int k) { return edges[mod3(edge) - 1][k]; }

    static BoundaryData zero(int m, int degree = 0) {
        BoundaryData F;
        F.m = m;
        F.degree = degree;
        for (auto& e : F.edges) e.assign(m + 1, UniPoly());
        return F;
    }

    bool is_zero() const {
        for (const auto& e : edges)
            for (const auto& p : e)
                if (!p.is_zero()) return false;
        return true;
    }

    friend bool operator==(const BoundaryData& a, const BoundaryData& b) {
        return a.m == b.m && a.degree == b.degree && a.edges == b.edges;
    }
};

/// Traces (u, d_n u, ..., d_n^m u) of a polynomial, declared degree = deg u.
inline BoundaryData traces_of(const BiPoly& u, int m) {
    BoundaryData F = BoundaryData::zero(m);
    F.degree = u.total_degree().value_or(0);
    for (int i = 1; i <= 3; ++i)
        for (int k = 0; k <= m; ++k) F.f(i, k) = normal_trace(u, i, k);
    return F;
}

/**
 * Symmetric m-tensor-valued polynomial on an edge, stored in the edge frame
 * (t_i, n_i) as its m+1 independent components: comp[j] is the value on any
 * index pattern with j normal slots and m-j tangential slots, so that
 * comp[j] = dt^{m-j} f^j when built from boundary data. For trace data the
 * tensor equals D^m u restricted to the edge.
 */
struct TraceTensor {
    int edge = 1;
    int order = 0;
    std::vector<UniPoly> comp; // size order + 1

    /// Componentwise arc-length tangential derivative (1/L_i) d/dh.
    TraceTensor tangential_derivative() const {
        const EdgeFrame& f = edge_frame(edge);
        Scalar inv_len = Scalar(1) / f.length;
        TraceTensor out{edge, order, {}};
        out.comp.reserve(comp.size());
        for (const auto& c : comp) out.comp.push_back(inv_len * derivative(c));
        return out;
    }

    /// Contract l slots with the exact vector w, leaving an (order-l)-tensor.
    TraceTensor contract(const Vec2& w, int l) const {
        const EdgeFrame& f = edge_frame(edge);
        Scalar wt = dot(w, f.tangent), wn = dot(w, f.normal);
        TraceTensor out{edge, order - l, {}};
        out.comp.resize(order - l + 1);
        for (int j = 0; j <= order - l; ++j) {
            UniPoly acc;
            for (int k = 0; k <= l; ++k) {
                Scalar coeff = Scalar(static_cast<long>(binom(l, k))) * wt.pow(l - k) * wn.pow(k);
                acc += coeff * comp[j + k];
            }
            out.comp[j] = acc;
        }
        return out;
    }

    /// Component on e_x^{(order-j)} e_y^{(j)}, as a polynomial of the edge parameter.
    UniPoly cartesian_component(int j) const {
        const EdgeFrame& f = edge_frame(edge);
        Vec2 ex{Scalar(1), Scalar(0)}, ey{Scalar(0), Scalar(1)};
        Scalar xt = dot(ex, f.tangent), xn = dot(ex, f.normal);
        Scalar yt = dot(ey, f.tangent), yn = dot(ey, f.normal);
        int mx = order - j;
        UniPoly acc;
        for (int k1 = 0; k1 <= mx; ++k1)
            for (int k2 = 0; k2 <= j; ++k2) {
                Scalar c = Scalar(static_cast<long>(binom(mx, k1) * binom(j, k2))) *
                           xt.pow(mx - k1) * xn.pow(k1) * yt.pow(j - k2) * yn.pow(k2);
                acc += c * comp[k1 + k2];
            }
        return acc;
    }

    /// All Cartesian components evaluated at parameter h.
    std::vector<Scalar> cartesian_at(const Scalar& h) const {
        std::vector<Scalar> out(order + 1);
        for (int j = 0; j <= order; ++j) out[j] = cartesian_component(j)(h);
        return out;
    }

    static long binom(int n, int k) {
        if (k < 0 || k > n) return 0;
        long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }
};

/**
 * The k-th order trace tensor sigma_i^k(f^0, ..., f^k) built from boundary
 * data: frame components dt^{k-j} f_i^j with dt the arc-length tangential
 * derivative. Coincides with D^k u on gamma_i when F = traces_of(u, m).
 */
inline TraceTensor sigma(const BoundaryData& F, int edge, int k) {
    const EdgeFrame& fr = edge_frame(edge);
    Scalar inv_len = Scalar(1) / fr.length;
    TraceTensor out{mod3(edge), k, {}};
    out.comp.resize(k + 1);
    for (int j = 0; j <= k; ++j) {
        UniPoly g = F.f(edge, j);
        for (int d = 0; d < k - j; ++d) g = inv_len * derivative(g);
        out.comp[j] = g;
    }
    return out;
}

/**
 * Outcome of the vertex compatibility check: one entry per scalar condition,
 * carrying the exact defect. Data is compatible iff every defect is zero.
 */
struct CompatibilityReport {
    struct Entry {
        std::string condition;
        int vertex = 0; // 0 for conditions not attached to a vertex (degree bounds)
        bool pass = true;
        Scalar defect;
    };
    std::vector<Entry> entries;

    bool compatible() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }

    std::vector<Entry> failures() const {
        std::vector<Entry> out;
        for (const auto& e : entries)
            if (!e.pass) out.push_back(e);
        return out;
    }

    std::string summary() const {
        std::ostringstream os;
        if (compatible()) {
            os << "compatible (" << entries.size() << " conditions)";
            return os.str();
        }
        os << "incompatible:";
        for (const auto& e : failures()) os << "\n  " << e.condition << " defect " << e.defect;
        return os.str();
    }
};

/**
 * Evaluate every vertex condition for polynomial boundary data exactly:
 * degree bounds deg f_i^k <= p-k, agreement of sigma^k at each vertex for
 * k = 0..m, and the tangential contraction conditions on sigma^m for
 * l = 1..m. Incompatibility is an outcome, not an error.
 */
inline CompatibilityReport check_compatibility(const BoundaryData& F) {
    CompatibilityReport report;

    for (int i = 1; i <= 3; ++i)
        for (int k = 0; k <= F.m; ++k) {
            auto deg = F.f(i, k).degree();
            int bound = F.degree - k;
            bool ok = !deg || *deg <= bound;
            std::ostringstream cond;
            cond << "deg f_" << i << "^" << k << " <= " << bound;
            report.entries.push_back(
                {cond.str(), 0, ok, ok ? Scalar(0) : Scalar(static_cast<long>(*deg - bound))});
        }

    for (int i = 1; i <= 3; ++i) {
        int ea = mod3(i + 1), eb = mod3(i + 2);
        // a_i is the end (h=1) of gamma_{i+1} and the start (h=0) of gamma_{i+2}
        for (int k = 0; k <= F.m; ++k) {
            auto A = sigma(F, ea, k).cartesian_at(Scalar(1));
            auto B = sigma(F, eb, k).cartesian_at(Scalar(0));
            for (int j = 0; j <= k; ++j) {
                Scalar defect = A[j] - B[j];
                std::ostringstream cond;
                cond << "sigma^" << k << " at a_" << i << " component " << j;
                report.entries.push_back({cond.str(), i, defect.is_zero(), defect});
            }
        }
        for (int l = 1; l <= F.m; ++l) {
            TraceTensor SA = sigma(F, ea, F.m), SB = sigma(F, eb, F.m);
            for (int d = 0; d < l; ++d) {
                SA = SA.tangential_derivative();
                SB = SB.tangential_derivative();
            }
            auto A = SA.contract(edge_frame(eb).tangent, l).cartesian_at(Scalar(1));
            auto B = SB.contract(edge_frame(ea).tangent, l).cartesian_at(Scalar(0));
            for (int j = 0; j <= F.m - l; ++j) {
                Scalar defect = A[j] - B[j];
                std::ostringstream cond;
                cond << "t^(" << l << ") dt^" << l << " sigma^" << F.m << " at a_" << i
                     << " component " << j;
                report.entries.push_back({cond.str(), i, defect.is_zero(), defect});
            }
        }
    }
    return report;
}

} // namespace tracelift
