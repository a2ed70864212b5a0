#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pbs/quadrature.hpp"
#include "support.hpp"

using namespace pbs;

namespace {

constexpr double kPi = std::numbers::pi;

template <class Fn>
double integrate(const DiscQuadrature& rule, Fn f) {
    double s = 0.0;
    rule.for_each([&](Vec2 q, double w) { s += w * f(q); });
    return s;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n = 1; n <= 8; ++n) {
        const GaussLegendre g(n);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            EXPECT_NEAR(s, exact, 1e-14) << n << " " << p;
        }
        for (int i = 0; i < n; ++i) EXPECT_EQ(g.nodes[n - 1 - i], -g.nodes[i]);
    }
}

TEST(DiscQuadrature, AreaAndMoments) {
    for (double r : {1.0, 1.1e-3, 3.7}) {
        for (int cells : {11, 51, 201}) {
            const DiscQuadrature rule(r, {cells, 3, 3});
            // Clipped boundary cells converge at high order; 11 cells already give ~1e-8.
            const double tol = cells < 50 ? 1e-7 : 1e-10;
            const double area = kPi * r * r;
            EXPECT_NEAR(integrate(rule, [](Vec2) { return 1.0; }), area, tol * area) << r << " " << cells;
            // Radial moments: Integral |q|^2 = pi R^4 / 2, Integral x^2 y^2 = pi R^6 / 24.
            const double m2 = kPi * std::pow(r, 4) / 2;
            EXPECT_NEAR(integrate(rule, [](Vec2 q) { return q.x * q.x + q.y * q.y; }), m2, tol * m2);
            const double m4 = kPi * std::pow(r, 6) / 24;
            EXPECT_NEAR(integrate(rule, [](Vec2 q) { return q.x * q.x * q.y * q.y; }), m4, tol * m4);
        }
    }
}

TEST(DiscQuadrature, OddMomentsVanish) {
    const DiscQuadrature rule(2.0, {31, 3, 3});
    EXPECT_NEAR(integrate(rule, [](Vec2 q) { return q.x; }), 0.0, 1e-13);
    EXPECT_NEAR(integrate(rule, [](Vec2 q) { return q.x * q.y; }), 0.0, 1e-13);
    EXPECT_NEAR(integrate(rule, [](Vec2 q) { return q.x * q.x * q.x * q.y; }), 0.0, 1e-13);
}

TEST(DiscQuadrature, NodesInsideDiscWithPositiveWeights) {
    const double r = 1.1e-3;
    const DiscQuadrature rule(r, {41, 3, 3});
    std::size_t count = 0;
    rule.for_each([&](Vec2 q, double w) {
        EXPECT_LE(std::hypot(q.x, q.y), r * (1 + 1e-12));
        EXPECT_GT(w, 0.0);
        ++count;
    });
    EXPECT_EQ(count, rule.size());
}

TEST(DiscQuadrature, BoundaryNodesClosedUnderPointGroup) {
    const DiscQuadrature rule(1.0, {21, 3, 3});
    const auto& b = rule.boundary_nodes();
    auto has = [&](Vec2 q, double w) {
        for (const auto& n : b) {
            if (n.q.x == q.x && n.q.y == q.y && n.weight == w) return true;
        }
        return false;
    };
    for (const auto& n : b) {
        EXPECT_TRUE(has({n.q.y, n.q.x}, n.weight));
        EXPECT_TRUE(has({-n.q.x, n.q.y}, n.weight));
        EXPECT_TRUE(has({n.q.x, -n.q.y}, n.weight));
    }
    // Interior lattice is symmetric too.
    const auto& l = rule.lattice();
    const auto& w = rule.lattice_weights();
    for (std::size_t i = 0; i < l.size(); ++i) {
        EXPECT_EQ(l[l.size() - 1 - i], -l[i]);
        EXPECT_EQ(w[w.size() - 1 - i], w[i]);
    }
}

TEST(DiscQuadrature, ZeroRadiusIsSingleUnitNode) {
    const DiscQuadrature rule(0.0);
    EXPECT_TRUE(rule.degenerate());
    EXPECT_EQ(rule.size(), 1u);
    rule.for_each([](Vec2 q, double w) {
        EXPECT_EQ(q.x, 0.0);
        EXPECT_EQ(q.y, 0.0);
        EXPECT_EQ(w, 1.0);
    });
}

TEST(DiscQuadrature, RefinementDoublesCells) {
    const QuadratureOptions o{};
    EXPECT_EQ(o.refined(0).cells, o.cells);
    EXPECT_GE(o.refined(1).cells, 2 * o.cells);
    EXPECT_GE(o.refined(2).cells, 4 * o.cells);
}

TEST(DiscQuadrature, OscillatoryIntegralConverges) {
    // Integral of exp(i a |q|^2) over the disc = (pi / (i a)) (exp(i a R^2) - 1).
    const double r = 1.1e-3, a = 6.0e6;
    const cplx exact = kPi / cplx(0, a) * (std::exp(cplx(0, a * r * r)) - 1.0);
    const DiscQuadrature rule(r);
    cplx s = 0.0;
    rule.for_each([&](Vec2 q, double w) { s += w * std::exp(cplx(0, a * (q.x * q.x + q.y * q.y))); });
    EXPECT_LT(std::abs(s - exact), 1e-9 * std::abs(exact));
}
