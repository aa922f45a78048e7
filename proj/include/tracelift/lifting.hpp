#pragma once

#include <string>
#include <vector>

#include "tracelift/geometry.hpp"
#include "tracelift/kernel.hpp"

namespace tracelift {

/**
 * Configuration of the composed lifting operators: the averaging kernel, the
 * maximum trace order m, and the vanishing order r_policy used by the M / S
 * correction stages. The cascade needs r_policy = m+1 so that each correction
 * leaves all previously fixed normal traces (orders 0..m) untouched, and the
 * kernel must satisfy N >= m + r_policy + 2.
 */
struct LiftConfig {
    KernelMoments kernel;
    int m = 1;
    int r_policy = 2;

    static LiftConfig for_order(int m, int kernel_N = 0) {
        int r = m + 1;
        int min_N = m + r + 2;
        LiftConfig cfg{KernelMoments(kernel_N > 0 ? kernel_N : std::max(4, min_N)), m, r};
        cfg.validate();
        return cfg;
    }

    void validate() const {
        if (m < 0) throw std::invalid_argument("trace order m must be >= 0");
        if (kernel.N() < m + r_policy + 2)
            throw std::invalid_argument("kernel N = " + std::to_string(kernel.N()) +
                                        " too small, need N >= m + r + 2 = " +
                                        std::to_string(m + r_policy + 2));
    }
};

namespace detail {

inline Scalar inv_factorial(int m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Scalar(mpq_class(1) / mpq_class(f));
}

inline mpz_class binom_z(int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

// The label rotation R(x,y) = (1-x-y, x) taking a_i to a_{i+1}, and its inverse.
inline const Mat2& rotation_matrix() {
    static const Mat2 R{Scalar(-1), Scalar(-1), Scalar(1), Scalar(0)};
    return R;
}
inline const Vec2& rotation_offset() {
    static const Vec2 b{Scalar(1), Scalar(0)};
    return b;
}
inline const Mat2& rotation_inv_matrix() {
    static const Mat2 R{Scalar(0), Scalar(1), Scalar(-1), Scalar(-1)};
    return R;
}
inline const Vec2& rotation_inv_offset() {
    static const Vec2 b{Scalar(0), Scalar(1)};
    return b;
}

} // namespace detail

/**
 * The edge-1 convolution lifting: with f(x+ty) expanded as sum_j c_j(x,y) t^j,
 *
 *   E_m(f)(x,y) = ((-y)^m / m!) sum_j mu_j c_j(x,y),
 *
 * which is the exact value of the defining integral for polynomial f.
 * Degree <= deg f + m; the order-j normal traces on gamma_1 are f delta_{jm}.
 */
inline BiPoly e_lift_edge1(const KernelMoments& kernel, int m, const UniPoly& f) {
    if (f.is_zero()) return BiPoly();
    BiPoly avg; // sum_j mu_j c_j, with c_j(x,y) = sum_{k>=j} a_k binom(k,j) x^{k-j} y^j
    for (int k = 0; k <= *f.degree(); ++k) {
        Scalar a = f.coeff(k);
        if (a.is_zero()) continue;
        for (int j = 0; j <= k; ++j)
            avg.add_term(k - j, j, a * Scalar(mpq_class(detail::binom_z(k, j))) * kernel.moment(j));
    }
    Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
    return BiPoly::monomial(0, m, sign * detail::inv_factorial(m)) * avg;
}

/**
 * Transport a lifting built for edge-1 data onto edge i. Edges rotate via
 * R(x,y) = (1-x-y, x); the hypotenuse composition stretches normal
 * derivatives by sqrt2 per order, hence the 2^{-m/2} factor on edge 2.
 */
inline BiPoly transport_to_edge(const BiPoly& u, int edge, int m) {
    switch (mod3(edge)) {
        case 1: return u;
        case 2:
            return Scalar::sqrt2_pow(-m) *
                   compose_affine(u, detail::rotation_inv_matrix(), detail::rotation_inv_offset());
        default:
            return compose_affine(u, detail::rotation_matrix(), detail::rotation_offset());
    }
}

/// E_m^{[i]}(f): lifts f from gamma_i with order-j normal traces f delta_{jm}.
inline BiPoly e_lift(const LiftConfig& cfg, int m, int edge, const UniPoly& f) {
    return transport_to_edge(e_lift_edge1(cfg.kernel, m, f), edge, m);
}

/**
 * M_{m,r}^{[i]}(f) = x^r E_m(f / tau^r) transported to edge i: same traces on
 * gamma_i as E_m, and normal derivatives of orders 0..r-1 vanish identically
 * on gamma_{i+2}. Requires f to vanish to order r at the start vertex a_{i+1}.
 */
inline BiPoly m_lift(const LiftConfig& cfg, int m, int r, int edge, const UniPoly& f) {
    if (cfg.kernel.N() < m + r + 2)
        throw std::invalid_argument("kernel N too small for M_{" + std::to_string(m) + "," +
                                    std::to_string(r) + "}");
    if (!vanishing_order(f, Scalar(0)).at_least(r))
        throw InsufficientVanishing("M_{m,r} data on edge " + std::to_string(edge) +
                                    " must vanish to order " + std::to_string(r) +
                                    " at vertex a_" + std::to_string(mod3(edge + 1)));
    UniPoly g = divide_out(f, Scalar(0), r);
    BiPoly core = pow(BiPoly::var_x(), r) * e_lift_edge1(cfg.kernel, m, g);
    return transport_to_edge(core, edge, m);
}

/**
 * S_{m,r}^{[i]}(f) = {x(1-x-y)}^r E_m(f / {tau(1-tau)}^r) transported to edge
 * i: same traces on gamma_i as E_m, normal derivatives of orders 0..r-1
 * vanish on both neighboring edges. Requires order-r vanishing at both
 * endpoints of gamma_i.
 */
inline BiPoly s_lift(const LiftConfig& cfg, int m, int r, int edge, const UniPoly& f) {
    if (cfg.kernel.N() < m + r + 2)
        throw std::invalid_argument("kernel N too small for S_{" + std::to_string(m) + "," +
                                    std::to_string(r) + "}");
    for (int end = 0; end <= 1; ++end)
        if (!vanishing_order(f, Scalar(end)).at_least(r))
            throw InsufficientVanishing("S_{m,r} data on edge " + std::to_string(edge) +
                                        " must vanish to order " + std::to_string(r) +
                                        " at vertex a_" + std::to_string(mod3(edge + 1 + end)));
    // {tau(1-tau)}^r = (-1)^r tau^r (tau-1)^r
    UniPoly g = divide_out(divide_out(f, Scalar(0), r), Scalar(1), r);
    if (r % 2 != 0) g = -g;
    BiPoly bubble = BiPoly::var_x() * (BiPoly::constant(Scalar(1)) - BiPoly::var_x() - BiPoly::var_y());
    BiPoly core = pow(bubble, r) * e_lift_edge1(cfg.kernel, m, g);
    return transport_to_edge(core, edge, m);
}

/// Single-edge lifting of a trace/normal-derivative pair from gamma_1:
/// E_0(f) + E_1(g - d_n E_0(f)|_{gamma_1}).
inline BiPoly lift_pair_edge1(const LiftConfig& cfg, const UniPoly& f, const UniPoly& g) {
    BiPoly u = e_lift(cfg, 0, 1, f);
    UniPoly defect = g - normal_trace(u, 1, 1);
    return u + e_lift(cfg, 1, 1, defect);
}

/// One named intermediate of a composed lifting pipeline.
struct LiftStage {
    std::string name;
    BiPoly value;
};

namespace detail {

// Correction stage: lift the current defect on an edge so that the order-i
// normal trace becomes exact there without disturbing what previous stages
// fixed. InsufficientVanishing here means the data violates a vertex
// compatibility condition; rethrow with the stage context attached.
template <typename LiftFn>
BiPoly correction_stage(const BiPoly& u, const BoundaryData& F, int edge, int i,
                        const std::string& stage, LiftFn&& lift_defect) {
    UniPoly defect = F.f(edge, i) - normal_trace(u, edge, i);
    try {
        return u + lift_defect(defect);
    } catch (const InsufficientVanishing& e) {
        throw IncompatibleData("stage " + stage + " on edge gamma_" + std::to_string(edge) +
                               ": " + e.what());
    }
}

} // namespace detail

/**
 * The full cascade for order-m data, one edge at a time:
 *
 *   K_i^{[1]}: E-lifts fix all normal traces on gamma_1,
 *   K_i^{[2]}: M-corrections fix gamma_2 while preserving gamma_1,
 *   K_i^{[3]}: S-corrections fix gamma_3 while preserving gamma_1 and gamma_2.
 *
 * Every intermediate is returned for inspection; the last one is the lifting.
 */
inline std::vector<LiftStage> lift_general_stages(const LiftConfig& cfg, const BoundaryData& F) {
    if (F.m != cfg.m)
        throw std::invalid_argument("boundary data order " + std::to_string(F.m) +
                                    " does not match config order " + std::to_string(cfg.m));
    cfg.validate();
    int r = cfg.r_policy;
    std::vector<LiftStage> stages;
    BiPoly u;
    for (int i = 0; i <= F.m; ++i) {
        UniPoly defect = F.f(1, i) - normal_trace(u, 1, i);
        u += e_lift(cfg, i, 1, defect);
        stages.push_back({"K_" + std::to_string(i) + "^[1]", u});
    }
    for (int i = 0; i <= F.m; ++i) {
        u = detail::correction_stage(u, F, 2, i, "K_" + std::to_string(i) + "^[2]",
                                     [&](const UniPoly& d) { return m_lift(cfg, i, r, 2, d); });
        stages.push_back({"K_" + std::to_string(i) + "^[2]", u});
    }
    for (int i = 0; i <= F.m; ++i) {
        u = detail::correction_stage(u, F, 3, i, "K_" + std::to_string(i) + "^[3]",
                                     [&](const UniPoly& d) { return s_lift(cfg, i, r, 3, d); });
        stages.push_back({"K_" + std::to_string(i) + "^[3]", u});
    }
    return stages;
}

/// L_m: lifts order-m boundary data to a polynomial with all traces exact.
inline BiPoly lift_general(const LiftConfig& cfg, const BoundaryData& F, int m) {
    if (m != F.m) throw std::invalid_argument("requested order does not match data order");
    return lift_general_stages(cfg, F).back().value;
}

/**
 * The m = 1 lifting with the stage names of the two-trace construction:
 * L1 on gamma_1, then K2 / L2 correct trace and normal derivative on
 * gamma_2 via M_{0,2}, M_{1,2}, then K3 / L correct gamma_3 via S_{0,2},
 * S_{1,2}. With r_policy = 2 this coincides with the general cascade.
 */
inline std::vector<LiftStage> lift_pair_stages(const LiftConfig& cfg, const BoundaryData& F) {
    if (F.m != 1) throw std::invalid_argument("lift_pair needs trace order m = 1 data");
    LiftConfig c = cfg;
    c.m = 1;
    c.r_policy = 2;
    auto stages = lift_general_stages(c, F);
    const char* names[] = {"L1_E0", "L1", "K2", "L2", "K3", "L"};
    for (std::size_t i = 0; i < stages.size() && i < 6; ++i) stages[i].name = names[i];
    return stages;
}

/// The two-trace lifting of (f, g) boundary data.
inline BiPoly lift_pair(const LiftConfig& cfg, const BoundaryData& F) {
    return lift_pair_stages(cfg, F).back().value;
}

/// Averaging operator H_L f(t) = t^{-1} int_0^t f(s) ds, exact on polynomials.
inline UniPoly hardy_average(const UniPoly& f) {
    if (f.is_zero()) return UniPoly();
    std::vector<Scalar> c(f.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = f.coeffs()[k] / Scalar(static_cast<long>(k + 1));
    return UniPoly(std::move(c));
}

} // namespace tracelift
