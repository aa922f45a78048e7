#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace tracelift;

namespace {
const QuadratureSpec kSpec{}; // defaults
}

TEST_CASE("admissible index set") {
    REQUIRE(admissible(2.0, 2.0, 1));
    REQUIRE(admissible(2.0, 3.0, 1));
    REQUIRE(admissible(3.0, 2.0, 1));
    REQUIRE_FALSE(admissible(1.5, 2.0, 1));  // s < m+1
    REQUIRE_FALSE(admissible(2.0, 1.0, 1));  // q = 1 excluded
    REQUIRE_FALSE(admissible(7.0 / 3.0, 3.0, 1)); // s - 1/q = 2 integer, q != 3... q=3
    REQUIRE(admissible(2.5, 2.0, 1));        // q = 2 waives the integrality constraint
}

TEST_CASE("triangle norms") {
    SECTION("closed forms") {
        REQUIRE(triangle_norm(BiPoly::constant(Scalar(1)), 0, 2.0, kSpec) ==
                Catch::Approx(std::sqrt(0.5)).epsilon(1e-10));
        REQUIRE(triangle_norm(BiPoly::var_x(), 0, 2.0, kSpec) ==
                Catch::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-10));
        REQUIRE(triangle_norm(BiPoly(), 2, 2.0, kSpec) == 0.0);
    }
    SECTION("q = 2 matches exact symbolic integration") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 5; ++trial) {
            BiPoly u = oracle::random_bipoly(7, rng);
            for (int k = 0; k <= 3; ++k) {
                double numeric = triangle_norm(u, k, 2.0, kSpec);
                double symbolic = oracle::sobolev_norm_symbolic(u, k);
                REQUIRE(numeric == Catch::Approx(symbolic).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("edge norms") {
    SECTION("constants see only the edge length") {
        for (int i = 1; i <= 3; ++i) {
            double L = to_double(edge_frame(i).length);
            for (double sq : {1.5, 2.0, 3.0})
                REQUIRE(edge_norm(UniPoly::constant(Scalar(1)), 0.7, sq, i, kSpec) ==
                        Catch::Approx(std::pow(L, 1.0 / sq)).epsilon(1e-9));
        }
    }
    SECTION("half-order seminorm of h is exactly 1") {
        double full = edge_norm(UniPoly::tau(), 0.5, 2.0, 1, kSpec);
        REQUIRE(full == Catch::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-8));
        double semi_sq = full * full - 1.0 / 3.0;
        REQUIRE(semi_sq == Catch::Approx(1.0).epsilon(1e-8));
    }
    SECTION("zero polynomial") { REQUIRE(edge_norm(UniPoly(), 1.5, 2.0, 2, kSpec) == 0.0); }
    SECTION("integer index is the sum of derivative L^q norms") {
        // ||h||_{1,2}^2 = 1/3 + 1 on edge 1
        double v = edge_norm(UniPoly::tau(), 1.0, 2.0, 1, kSpec);
        REQUIRE(v == Catch::Approx(std::sqrt(1.0 / 3.0 + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("weighted edge norms") {
    SECTION("left weight closed form") {
        REQUIRE(weighted_edge_norm(UniPoly::tau(), WeightKind::left, 0, 2.0, 1, kSpec) ==
                Catch::Approx(std::sqrt(0.5)).epsilon(1e-9));
    }
    SECTION("divergent weight reports infinity") {
        REQUIRE(std::isinf(
            weighted_edge_norm(UniPoly::constant(Scalar(1)), WeightKind::left, 0, 2.0, 1, kSpec)));
        REQUIRE(std::isinf(
            weighted_edge_norm(UniPoly::tau(), WeightKind::both, 0, 2.0, 1, kSpec)));
    }
    SECTION("two-sided weight closed form") {
        UniPoly bubble = UniPoly::tau() * UniPoly({Scalar(1), Scalar(-1)});
        REQUIRE(weighted_edge_norm(bubble, WeightKind::both, 0, 2.0, 1, kSpec) ==
                Catch::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-9));
    }
}

TEST_CASE("vertex integrals") {
    SECTION("identical approach values vanish") {
        // f on gamma_2 and g on gamma_3 both equal to 1 near a_1
        UniPoly one = UniPoly::constant(Scalar(1));
        REQUIRE(vertex_integral(one, one, 1, 2.0, kSpec) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("linear difference closed form") {
        // edges 1 and 2 meet at a_3; f = h on gamma_1 ends with value 1,
        // g on gamma_2 starts at 1 and decays with slope -sqrt2 in arc length:
        // difference along the rays is h + ... choose g so that diff(h) = h.
        // Simplest: f(a_3 - h t_1) = 1 - h, g(a_3 + h t_2) = 1 - 2h -> diff = h.
        UniPoly f = UniPoly::tau();                               // on gamma_1: f(1-h) = 1-h
        UniPoly g({Scalar(1), Scalar(-2) * Scalar::sqrt2()});     // g(h/L2) = 1 - 2 sqrt2 h/sqrt2
        REQUIRE(vertex_integral(f, g, 3, 2.0, kSpec) == Catch::Approx(0.5).epsilon(1e-9));
    }
    SECTION("mismatched vertex values diverge") {
        REQUIRE(std::isinf(vertex_integral(UniPoly::constant(Scalar(1)), UniPoly(), 1, 2.0,
                                           kSpec)));
    }
}

TEST_CASE("boundary data norm") {
    SECTION("constant pair closed form") {
        BoundaryData F = BoundaryData::zero(1, 0);
        for (int i = 1; i <= 3; ++i) F.f(i, 0) = UniPoly::constant(Scalar(1));
        double expect = std::sqrt(2.0 + std::sqrt(2.0));
        REQUIRE(data_norm(F, 2.0, 2.0, kSpec) == Catch::Approx(expect).epsilon(1e-8));
    }
    SECTION("zero data") {
        REQUIRE(data_norm(BoundaryData::zero(1, 0), 2.0, 2.0, kSpec) == 0.0);
    }
    SECTION("inadmissible index raises") {
        REQUIRE_THROWS_AS(data_norm(BoundaryData::zero(1, 0), 1.25, 3.0, kSpec),
                          InadmissibleIndex);
    }
    SECTION("absolute homogeneity of degree one") {
        std::mt19937_64 rng(62);
        BoundaryData F = traces_of(oracle::random_bipoly(4, rng), 1);
        BoundaryData G = F;
        for (int i = 1; i <= 3; ++i)
            for (int k = 0; k <= 1; ++k) G.f(i, k) = Scalar(-3) * F.f(i, k);
        double nf = data_norm(F, 2.0, 2.0, kSpec), ng = data_norm(G, 2.0, 2.0, kSpec);
        REQUIRE(ng == Catch::Approx(3.0 * nf).epsilon(1e-10));
    }
    SECTION("self-convergence under refinement") {
        std::mt19937_64 rng(63);
        BoundaryData F = traces_of(oracle::random_bipoly(3, rng), 1);
        double coarse = data_norm(F, 2.0, 2.0, kSpec);
        QuadratureSpec fine{kSpec.order * 2, kSpec.grading * 2, kSpec.precision};
        double refined = data_norm(F, 2.0, 2.0, fine);
        REQUIRE(refined == Catch::Approx(coarse).epsilon(1e-6));
    }
}

TEST_CASE("stability ratio") {
    LiftConfig cfg = LiftConfig::for_order(1);
    SECTION("constant data closed form") {
        BoundaryData F = traces_of(BiPoly::constant(Scalar(1)), 1);
        BiPoly u = lift_pair(cfg, F);
        double expect = std::sqrt(0.5) / std::sqrt(2.0 + std::sqrt(2.0));
        REQUIRE(stability_ratio(u, F, 2, 2.0, kSpec) == Catch::Approx(expect).epsilon(1e-8));
        REQUIRE(expect == Catch::Approx(0.3827).epsilon(1e-3));
    }
    SECTION("zero data violates the precondition") {
        REQUIRE_THROWS_AS(
            stability_ratio(BiPoly::constant(Scalar(1)), BoundaryData::zero(1, 0), 2, 2.0, kSpec),
            std::invalid_argument);
    }
    SECTION("ratios are positive") {
        std::mt19937_64 rng(64);
        BoundaryData F = traces_of(oracle::random_bipoly(3, rng), 1);
        BiPoly u = lift_pair(cfg, F);
        REQUIRE(stability_ratio(u, F, 2, 2.0, kSpec) > 0.0);
    }
}

TEST_CASE("weighted bound for the convolution lifting") {
    KernelMoments kernel(4);
    SECTION("constant closed form at m = 0, q = 2") {
        auto [lhs, rhs] = hardy_bound_check(0, 2.0, UniPoly::constant(Scalar(1)), kernel, kSpec);
        REQUIRE(lhs == Catch::Approx(std::sqrt(0.5)).epsilon(1e-9));
        REQUIRE(rhs == Catch::Approx(2.0 * (630.0 / 256.0) * std::sqrt(0.5)).epsilon(1e-9));
        REQUIRE(lhs <= rhs);
    }
    SECTION("zero data") {
        auto [lhs, rhs] = hardy_bound_check(1, 2.0, UniPoly(), kernel, kSpec);
        REQUIRE(lhs == 0.0);
        REQUIRE(rhs == 0.0);
    }
    SECTION("bound holds on random data") {
        std::mt19937_64 rng(65);
        for (double q : {1.5, 2.0, 3.0})
            for (int m = 0; m <= 1; ++m)
                for (int trial = 0; trial < 5; ++trial) {
                    UniPoly f = oracle::random_unipoly(8, rng);
                    auto [lhs, rhs] = hardy_bound_check(m, q, f, kernel, kSpec);
                    REQUIRE(lhs <= rhs * (1 + 1e-8));
                }
    }
    SECTION("unbounded weight propagates") {
        REQUIRE_THROWS_AS(hardy_bound_check(5, 2.0, UniPoly::tau(), kernel, kSpec),
                          UnboundedWeight);
    }
}
