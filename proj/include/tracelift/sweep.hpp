#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tracelift/norms.hpp"

namespace tracelift {

/// One evaluated stability trial.
struct SweepRow {
    int p = 0;
    double s = 2.0, q = 2.0;
    int trial = 0;
    double ratio = 0.0;
    double max_ratio_so_far = 0.0; // running max within the (s, q) series
};

struct SweepPlan {
    int degree_lo = 1, degree_hi = 12;
    std::vector<std::pair<double, double>> sq = {{2.0, 2.0}};
    int trials = 20;
    std::uint64_t seed = 0;
    int m = 1;
    int kernel_N = 0; // 0 = auto
    QuadratureSpec quad;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Random polynomial of total degree <= p with integer coefficients in [-9, 9].
inline BiPoly random_polynomial(int p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    BiPoly u;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j + i <= p; ++j) u.add_term(i, j, Scalar(coeff(rng)));
    if (u.is_zero()) u = BiPoly::constant(Scalar(1));
    return u;
}

/**
 * Deterministic stability sweep: per (degree, index pair, trial), lift the
 * traces of a seeded random polynomial and record the stability ratio. The
 * per-trial generator depends only on (seed, p, sq index, trial), so results
 * are byte-stable regardless of scheduling. Trials run concurrently.
 */
inline std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
    for (const auto& [s, q] : plan.sq)
        if (!admissible(s, q, plan.m))
            throw InadmissibleIndex("sweep index (s, q) = (" + std::to_string(s) + ", " +
                                    std::to_string(q) + ") not admissible for m = " +
                                    std::to_string(plan.m));
    if (plan.degree_hi < plan.degree_lo) throw std::invalid_argument("empty degree range");

    auto sq = plan.sq;
    std::sort(sq.begin(), sq.end());
    LiftConfig cfg = LiftConfig::for_order(plan.m, plan.kernel_N);

    std::vector<SweepRow> rows;
    for (int p = plan.degree_lo; p <= plan.degree_hi; ++p)
        for (std::size_t si = 0; si < sq.size(); ++si)
            for (int t = 0; t < plan.trials; ++t)
                rows.push_back({p, sq[si].first, sq[si].second, t, 0.0, 0.0});

    auto eval_row = [&](SweepRow& row, std::size_t si) {
        std::uint64_t h = plan.seed;
        h = detail::splitmix64(h ^ static_cast<std::uint64_t>(row.p));
        h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(si) << 20));
        h = detail::splitmix64(h ^ static_cast<std::uint64_t>(row.trial));
        std::mt19937_64 rng(h);
        BiPoly u = random_polynomial(row.p, rng);
        BoundaryData F = traces_of(u, plan.m);
        BiPoly lifted = lift_general(cfg, F, plan.m);
        row.ratio = stability_ratio(lifted, F, static_cast<int>(std::lround(row.s)), row.q,
                                    plan.quad);
    };

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t per_degree = sq.size() * plan.trials;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= rows.size()) return;
                eval_row(rows[i], (i % per_degree) / plan.trials);
            }
        });
    for (auto& th : pool) th.join();

    // running max per (s, q) series, in (p, trial) order
    for (std::size_t si = 0; si < sq.size(); ++si) {
        double running = 0.0;
        for (auto& row : rows)
            if (row.s == sq[si].first && row.q == sq[si].second) {
                running = std::max(running, row.ratio);
                row.max_ratio_so_far = running;
            }
    }
    return rows;
}

namespace detail {

inline std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

/// CSV rendering, 12 significant digits, rows ordered by (p, s, q, trial).
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "p,s,q,trial,ratio,max_ratio_so_far\n";
    for (const auto& r : rows) {
        out += std::to_string(r.p);
        out += ',';
        out += detail::format_sig(r.s);
        out += ',';
        out += detail::format_sig(r.q);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += detail::format_sig(r.ratio);
        out += ',';
        out += detail::format_sig(r.max_ratio_so_far);
        out += '\n';
    }
    return out;
}

} // namespace tracelift
