#pragma once

#include <cmath>
#include <mutex>
#include <vector>

#include "tracelift/scalar.hpp"

namespace tracelift {

/**
 * The averaging kernel b_N(t) = t^N (1-t)^N / B(N+1, N+1) on (0,1) and its
 * exact moment table mu_k = integral of t^k b_N(t) dt. Polynomial inputs see
 * the kernel only through finitely many moments, which are rational:
 * mu_0 = 1 and mu_{k+1} = mu_k (N+k+1) / (2N+k+2).
 */
class KernelMoments {
public:
    explicit KernelMoments(int N = 4) : N_(N) {
        if (N < 1) throw std::invalid_argument("kernel smoothness parameter N must be >= 1");
        mu_.push_back(mpq_class(1));
    }

    KernelMoments(const KernelMoments& o) : N_(o.N_) {
        std::lock_guard<std::mutex> g(o.lock_);
        mu_ = o.mu_;
    }
    KernelMoments& operator=(const KernelMoments& o) {
        if (this != &o) {
            std::scoped_lock g(lock_, o.lock_);
            N_ = o.N_;
            mu_ = o.mu_;
        }
        return *this;
    }

    int N() const { return N_; }

    /// Exact k-th moment, cached; the cache only ever grows.
    Scalar moment(int k) const {
        std::lock_guard<std::mutex> g(lock_);
        while (static_cast<int>(mu_.size()) <= k) {
            long j = static_cast<long>(mu_.size()) - 1;
            mu_.push_back(mu_.back() * mpq_class(N_ + j + 1) / mpq_class(2 * N_ + j + 2));
        }
        return Scalar(mu_[k]);
    }

    /// Normalization constant c_N = 1 / B(N+1, N+1) = (2N+1) * binom(2N, N).
    Scalar normalization() const {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), 2 * N_, N_);
        return Scalar(mpq_class(2 * N_ + 1) * bin);
    }

    /// b_N(t) for numeric cross-checks.
    double density(double t) const {
        if (t <= 0.0 || t >= 1.0) return 0.0;
        return to_double(normalization()) * std::pow(t, N_) * std::pow(1.0 - t, N_);
    }

    /**
     * sup of b_N(t) / t^m over (0,1], solved exactly: the critical point of
     * t^{N-m} (1-t)^N is t = (N-m)/(2N-m); for m = N the quotient decreases
     * from c_N. Throws UnboundedWeight for m > N.
     */
    double sup_weighted(int m) const {
        if (m > N_)
            throw UnboundedWeight("b_N / t^m unbounded near 0 for m = " + std::to_string(m) +
                                  " > N = " + std::to_string(N_));
        Scalar c = normalization();
        if (m == N_) return to_double(c);
        mpq_class t(N_ - m, 2 * N_ - m);
        t.canonicalize();
        Scalar ts(t);
        Scalar value = c * ts.pow(N_ - m) * (Scalar(1) - ts).pow(N_);
        return to_double(value);
    }

private:
    int N_;
    mutable std::vector<mpq_class> mu_;
    mutable std::mutex lock_;
};

} // namespace tracelift
