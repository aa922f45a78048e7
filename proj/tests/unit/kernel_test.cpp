#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace tracelift;

TEST_CASE("kernel moments") {
    KernelMoments k4(4);

    SECTION("normalization and low moments, N = 4") {
        REQUIRE(k4.moment(0) == Scalar(1));
        REQUIRE(k4.moment(1) == Scalar::rational(1, 2)); // symmetric bump
        REQUIRE(k4.moment(2) == Scalar::rational(3, 11));
        REQUIRE(k4.normalization() == Scalar(630));
    }
    SECTION("mu_1 = 1/2 for every N") {
        for (int N = 1; N <= 9; ++N) REQUIRE(KernelMoments(N).moment(1) == Scalar::rational(1, 2));
    }
    SECTION("moments decrease strictly") {
        for (int k = 0; k < 14; ++k) {
            double a = to_double(k4.moment(k)), b = to_double(k4.moment(k + 1));
            REQUIRE(b > 0.0);
            REQUIRE(b < a);
        }
    }
    SECTION("moments agree with quadrature of t^k b(t)") {
        // independent route: high-order Gauss on the smooth density
        for (int k = 0; k <= 12; ++k) {
            double numeric = quad::integrate(
                [&](double t) { return std::pow(t, k) * k4.density(t); }, 0.0, 1.0, 40, 8);
            REQUIRE(numeric == Catch::Approx(to_double(k4.moment(k))).epsilon(1e-12));
        }
    }
    SECTION("invalid smoothness parameter") {
        REQUIRE_THROWS_AS(KernelMoments(0), std::invalid_argument);
    }
}

TEST_CASE("weighted sup of the kernel") {
    KernelMoments k4(4);
    SECTION("m = 0 peaks at 1/2") {
        REQUIRE(k4.sup_weighted(0) == Catch::Approx(630.0 / 256.0).epsilon(1e-12));
    }
    SECTION("m = N is the limit value at 0") {
        REQUIRE(k4.sup_weighted(4) == Catch::Approx(630.0).epsilon(1e-12));
    }
    SECTION("m > N is unbounded") { REQUIRE_THROWS_AS(k4.sup_weighted(5), UnboundedWeight); }
    SECTION("interior maxima dominate a sampled scan") {
        for (int m = 0; m <= 3; ++m) {
            double sup = k4.sup_weighted(m);
            for (int i = 1; i <= 200; ++i) {
                double t = i / 201.0;
                REQUIRE(k4.density(t) / std::pow(t, m) <= sup * (1 + 1e-12));
            }
        }
    }
}
