#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace tracelift;

TEST_CASE("reference triangle frames") {
    REQUIRE(triangle_vertex(1) == Vec2{Scalar(0), Scalar(1)});
    REQUIRE(triangle_vertex(2) == Vec2{Scalar(0), Scalar(0)});
    REQUIRE(triangle_vertex(3) == Vec2{Scalar(1), Scalar(0)});

    for (int i = 1; i <= 3; ++i) {
        const EdgeFrame& f = edge_frame(i);
        REQUIRE(f.start == triangle_vertex(i + 1));
        REQUIRE(f.end == triangle_vertex(i + 2));
        REQUIRE(dot(f.tangent, f.tangent) == Scalar(1));
        REQUIRE(dot(f.normal, f.normal) == Scalar(1));
        REQUIRE(dot(f.tangent, f.normal) == Scalar(0));
        REQUIRE(f.span() == f.length * f.tangent);
        // outward: negative component toward the opposite vertex
        Vec2 to_opposite = triangle_vertex(i) - f.start;
        REQUIRE(to_double(dot(f.normal, to_opposite)) < 0.0);
    }
    REQUIRE(edge_frame(2).length == Scalar::sqrt2());
    Scalar inv_r2 = Scalar(1) / Scalar::sqrt2();
    REQUIRE(edge_frame(2).normal == Vec2{inv_r2, inv_r2});
    REQUIRE(edge_frame(1).normal == Vec2{Scalar(0), Scalar(-1)});
    REQUIRE(edge_frame(3).normal == Vec2{Scalar(-1), Scalar(0)});
}

TEST_CASE("normal traces") {
    BiPoly x2y = BiPoly::monomial(2, 1);
    REQUIRE(normal_trace(x2y, 1, 0).is_zero());
    REQUIRE(normal_trace(x2y, 1, 1) == -UniPoly::monomial(2)); // -x^2 on y = 0
    // d/dn_2 of x is the constant (1/2) sqrt2
    REQUIRE(normal_trace(BiPoly::var_x(), 2, 1) ==
            UniPoly::constant(Scalar(mpq_class(0), mpq_class(1, 2))));
    SECTION("order zero trace is the line restriction") {
        std::mt19937_64 rng(31);
        for (int i = 1; i <= 3; ++i) {
            BiPoly u = oracle::random_bipoly(7, rng);
            const EdgeFrame& f = edge_frame(i);
            REQUIRE(normal_trace(u, i, 0) == substitute_line(u, f.start, f.span()));
        }
    }
}

TEST_CASE("traces_of") {
    SECTION("constants") {
        BoundaryData F = traces_of(BiPoly::constant(Scalar(1)), 1);
        for (int i = 1; i <= 3; ++i) {
            REQUIRE(F.f(i, 0) == UniPoly::constant(Scalar(1)));
            REQUIRE(F.f(i, 1).is_zero());
        }
    }
    SECTION("y^2 on the bottom edge") {
        BoundaryData F = traces_of(BiPoly::monomial(0, 2), 2);
        REQUIRE(F.f(1, 0).is_zero());
        REQUIRE(F.f(1, 1).is_zero());
        REQUIRE(F.f(1, 2) == UniPoly::constant(Scalar(2)));
    }
    SECTION("x on the left edge") {
        BoundaryData F = traces_of(BiPoly::var_x(), 1);
        REQUIRE(F.f(3, 0).is_zero());
        REQUIRE(F.f(3, 1) == UniPoly::constant(Scalar(-1)));
        REQUIRE(F.degree == 1);
    }
}

TEST_CASE("sigma tensors") {
    SECTION("gradient of xy on edge 1") {
        BoundaryData F = traces_of(BiPoly::monomial(1, 1), 1);
        TraceTensor s1 = sigma(F, 1, 1);
        REQUIRE(s1.cartesian_component(0).is_zero());         // e_x component
        REQUIRE(s1.cartesian_component(1) == UniPoly::tau()); // e_y component is h
    }
    SECTION("zero data gives the zero tensor") {
        BoundaryData F = BoundaryData::zero(2);
        TraceTensor s = sigma(F, 2, 2);
        for (int j = 0; j <= 2; ++j) REQUIRE(s.comp[j].is_zero());
    }
    SECTION("gradient of x^2 on edge 3 vanishes") {
        BoundaryData F = traces_of(BiPoly::monomial(2, 0), 1);
        TraceTensor s1 = sigma(F, 3, 1);
        REQUIRE(s1.cartesian_component(0).is_zero());
        REQUIRE(s1.cartesian_component(1).is_zero());
    }
    SECTION("sigma^m equals the derivative tensor on every edge") {
        std::mt19937_64 rng(32);
        for (int m = 0; m <= 3; ++m)
            for (int trial = 0; trial < 6; ++trial) {
                BiPoly u = oracle::random_bipoly(10, rng);
                BoundaryData F = traces_of(u, m);
                for (int i = 1; i <= 3; ++i) {
                    TraceTensor s = sigma(F, i, m);
                    for (int j = 0; j <= m; ++j)
                        REQUIRE(s.cartesian_component(j) ==
                                oracle::derivative_tensor_component(u, i, m, j));
                }
            }
    }
    SECTION("contraction order does not matter") {
        std::mt19937_64 rng(33);
        BiPoly u = oracle::random_bipoly(6, rng);
        TraceTensor s = sigma(traces_of(u, 2), 2, 2);
        Vec2 a{Scalar(1), Scalar::rational(1, 3)}, b{Scalar(-2), Scalar(1)};
        TraceTensor ab = s.contract(a, 1).contract(b, 1);
        TraceTensor ba = s.contract(b, 1).contract(a, 1);
        REQUIRE(ab.comp[0] == ba.comp[0]);
    }
}

TEST_CASE("compatibility checker") {
    SECTION("traces of genuine polynomials pass with zero defects") {
        std::mt19937_64 rng(34);
        for (int m = 0; m <= 2; ++m)
            for (int trial = 0; trial < 8; ++trial) {
                BiPoly u = oracle::random_bipoly(8, rng);
                CompatibilityReport r = check_compatibility(traces_of(u, m));
                REQUIRE(r.compatible());
                for (const auto& e : r.entries) REQUIRE(e.defect.is_zero());
            }
    }
    SECTION("vertex value mismatch is flagged at the right vertex") {
        BoundaryData F = BoundaryData::zero(0, 1);
        F.f(1, 0) = UniPoly::tau(); // f_1 = h, ends at a_3 with value 1
        CompatibilityReport r = check_compatibility(F);
        REQUIRE_FALSE(r.compatible());
        auto fails = r.failures();
        REQUIRE(fails.size() == 1);
        REQUIRE(fails[0].vertex == 3);
        REQUIRE(fails[0].defect == Scalar(1)); // f_1(a_3) = 1 vs f_2(a_3) = 0
    }
    SECTION("constant pair data is compatible") {
        BoundaryData F = BoundaryData::zero(1, 0);
        for (int i = 1; i <= 3; ++i) F.f(i, 0) = UniPoly::constant(Scalar(1));
        REQUIRE(check_compatibility(F).compatible());
    }
    SECTION("degree bound violations are reported") {
        BoundaryData F = BoundaryData::zero(1, 2);
        F.f(1, 1) = UniPoly::monomial(2); // deg 2 > p - 1 = 1
        CompatibilityReport r = check_compatibility(F);
        bool found = false;
        for (const auto& e : r.failures())
            if (e.condition.find("deg f_1^1") != std::string::npos) found = true;
        REQUIRE(found);
    }
}
