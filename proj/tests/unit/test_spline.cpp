#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "splinedft/bench.hpp"
#include "splinedft/boundary.hpp"
#include "splinedft/spline.hpp"
#include "splinedft/test_functions.hpp"
#include "support.hpp"

using namespace splinedft;

namespace {

const PrecisionContext ctx;

SampleGrid<double> random_grid(int n, double period = 1.0) {
    return SampleGrid<double>(period, testing::random_reals(static_cast<std::size_t>(n) + 1));
}

BoundaryVector<double> random_boundary(const SampleGrid<double>& g, int theta) {
    std::vector<double> b{g.b0()};
    for (int i = 1; i < theta; ++i) b.push_back(testing::uniform(-2, 2));
    return BoundaryVector<double>(b);
}

double max_row(const std::vector<double>& r) {
    double m = 0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("theta = 1 reduces to forward differences") {
    for (int n = 3; n <= 12; ++n) {
        const auto g = random_grid(n, 0.7 * n);
        const auto s = build_spline(g, 1, BoundaryVector<double>({g.b0()}), ctx);
        const double dt = g.delta_t();
        for (int j = 0; j < n; ++j) {
            const double fd = (g[j + 1] - g[j]) / dt;
            CHECK_MESSAGE(std::abs(s.deriv(1, j) - fd) <= 10 * ctx.tolerance() * std::max(1.0, std::abs(fd)),
                          "n=" << n << " j=" << j);
        }
        // Piecewise-linear interpolant at a third of each piece.
        for (int j = 0; j < n; ++j) {
            const double t = g.node(j) + dt / 3;
            CHECK(s.eval(t) == doctest::Approx(g[j] + (g[j + 1] - g[j]) / 3).epsilon(1e-12));
        }
    }
}

TEST_CASE("node interpolation") {
    for (int theta = 1; theta <= 5; ++theta)
        for (int n : {7, 8, 31}) {
            if (theta % 2 == 0 && n % 2 == 0) continue;
            const auto g = random_grid(n, 2.0);
            const auto s = build_spline(g, theta, random_boundary(g, theta), ctx);
            for (int j = 0; j <= n; ++j)
                CHECK(std::abs(s.eval(g.node(j)) - g[j]) <= 10 * ctx.tolerance() * std::max(1.0, std::abs(g[j])));
            for (int j = 0; j < n; ++j) CHECK(s.deriv(0, j) == g[j]);
        }
}

TEST_CASE("g3 is reproduced exactly at theta = 11") {
    const auto f = make_test_function<double>("g3");
    const auto g = f.sample(31);
    const auto s = build_spline(g, 11, exact_boundary<double>(g, 11, f.boundary_differences(11)), ctx);
    const auto r = error_report(f, s, 10);
    CHECK(r.e_max <= 1e6 * ctx.tolerance());
}

TEST_CASE("evaluation") {
    SUBCASE("theta-th derivative is constant on each piece") {
        const auto g = random_grid(9, 3.0);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        const double dt = g.delta_t();
        for (int j = 0; j < 9; ++j)
            for (double f : {0.0, 0.25, 0.5, 0.99}) CHECK(s.eval(g.node(j) + f * dt, 3) == s.deriv(3, j));
    }
    SUBCASE("hand-expanded quadratic at the midpoint of piece 0") {
        // dt = 0.5, piece 0: 1 + 2 u + 6 u^2 / 2 with u = t.
        const SampleGrid<double> g(1.0, {1.0, 2.75, 1.5});
        const SplineFunction<double> s(2, g, {{1.0, 2.75}, {2.0, -1.0}, {6.0, 4.0}});
        CHECK(s.eval(0.25) == doctest::Approx(1 + 2 * 0.25 + 3 * 0.0625));
        CHECK(s.eval(0.25, 1) == doctest::Approx(2 + 6 * 0.25));
        CHECK(s.eval(0.25, 2) == doctest::Approx(6.0));
        CHECK(s.eval(0.75) == doctest::Approx(2.75 - 0.25 + 2 * 0.0625));
    }
    SUBCASE("domain and order errors") {
        const auto g = random_grid(7);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        CHECK_THROWS_AS(s.eval(-1e-9), OutOfDomain);
        CHECK_THROWS_AS(s.eval(1.0 + 1e-9), OutOfDomain);
        CHECK_THROWS_AS(s.eval(0.5, 4), BadOrder);
        CHECK_THROWS_AS(s.eval(0.5, -1), BadOrder);
        CHECK_THROWS_AS(s.integrate(0.2, 1.5), OutOfDomain);
        CHECK_THROWS_AS(s.integrate(0.6, 0.2), OutOfDomain);
    }
    SUBCASE("t = T uses the last piece") {
        const auto g = random_grid(7);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        const double dt = g.delta_t();
        for (int beta = 0; beta <= 3; ++beta)
            CHECK(s.eval(1.0, beta) == doctest::Approx(s.evaluate_piece(6, dt, beta)).epsilon(1e-12));
        CHECK(std::abs(s.eval(1.0) - g[7]) <= 10 * ctx.tolerance());
    }
}

TEST_CASE("integration") {
    SUBCASE("empty interval") {
        const auto g = random_grid(7);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        CHECK(s.integrate(0.3, 0.3) == 0.0);
    }
    SUBCASE("constant samples") {
        const SampleGrid<double> g(4.0, std::vector<double>(9, 2.5));
        const auto s = build_spline(g, 1, BoundaryVector<double>({0.0}), ctx);
        CHECK(s.integrate(0.3, 3.1) == doctest::Approx(2.5 * 2.8).epsilon(1e-13));
        CHECK(s.integrate(0.0, 4.0) == doctest::Approx(10.0).epsilon(1e-13));
    }
    SUBCASE("random theta = 3 spline against Simpson") {
        const auto g = random_grid(11, 2.0);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        const double q = testing::simpson([&](double t) { return s.eval(t); }, 0.0, 2.0, 100000);
        const double exact = s.integrate(0.0, 2.0);
        CHECK(std::abs(exact - q) <= 1e-10 * std::max(1.0, std::abs(exact)));
        // Additivity across a piece boundary.
        CHECK(s.integrate(0.1, 1.3) + s.integrate(1.3, 1.9) == doctest::Approx(s.integrate(0.1, 1.9)).epsilon(1e-13));
    }
}

TEST_CASE("smoothness at interior nodes") {
    for (const char* id : {"g1", "g2", "g3", "g4"}) {
        const auto f = make_test_function<double>(id);
        for (int theta = 2; theta <= 5; ++theta)
            for (int n : {7, 31})
                for (int method = 1; method <= 2; ++method) {
                    const auto g = f.sample(n);
                    const auto b = method == 1 ? method1_boundary(g, theta, ctx) : method2_boundary(g, theta, ctx);
                    const auto s = build_spline(g, theta, b, ctx);
                    const double dt = g.delta_t();
                    for (int beta = 0; beta < theta; ++beta) {
                        const double scale = max_row(s.deriv()[beta]);
                        double worst = 0;
                        for (int j = 1; j < n; ++j)
                            worst = std::max(worst, std::abs(s.evaluate_piece(j - 1, dt, beta) - s.deriv(beta, j)));
                        CHECK_MESSAGE(worst <= 1e3 * ctx.tolerance() * scale, id << " theta=" << theta << " n=" << n
                                                                                   << " method" << method
                                                                                   << " beta=" << beta);
                    }
                }
    }
}

TEST_CASE("polynomial reproduction with exact boundary") {
    for (int theta = 1; theta <= 5; ++theta) {
        const int n = theta % 2 ? 10 : 11;
        const double period = 1.5;
        std::vector<double> c;
        for (int p = 0; p <= theta; ++p) c.push_back(testing::uniform());
        TestFunction<double> f{"poly", period, [c](const double& t, int order) {
                                   double v = 0;
                                   for (int p = order; p < static_cast<int>(c.size()); ++p) {
                                       double k = 1;
                                       for (int i = 0; i < order; ++i) k *= p - i;
                                       v += c[p] * k * std::pow(t, p - order);
                                   }
                                   return v;
                               }};
        const auto g = f.sample(n);
        const auto s = build_spline(g, theta, exact_boundary<double>(g, theta, f.boundary_differences(theta)), ctx);
        double scale = 1;
        for (double v : g.values()) scale = std::max(scale, std::abs(v));
        CHECK_MESSAGE(error_report(f, s, 10).e_max <= 1e4 * ctx.tolerance() * scale, "theta=" << theta);
    }
}

TEST_CASE("linearity in samples and boundary") {
    const int n = 13;
    const auto u = random_grid(n, 2.0);
    const auto v = random_grid(n, 2.0);
    const double a = 0.75, c = -1.5;
    std::vector<double> w;
    for (int j = 0; j <= n; ++j) w.push_back(a * u[j] + c * v[j]);
    const SampleGrid<double> gw(2.0, w);
    for (int theta : {2, 3, 4}) {
        const auto bu = random_boundary(u, theta);
        const auto bv = random_boundary(v, theta);
        std::vector<double> bw;
        for (int i = 0; i < theta; ++i) bw.push_back(a * bu[i] + c * bv[i]);
        const auto su = build_spline(u, theta, bu, ctx);
        const auto sv = build_spline(v, theta, bv, ctx);
        const auto sw = build_spline(gw, theta, BoundaryVector<double>(bw), ctx);
        for (int i = 0; i <= 100; ++i) {
            const double t = 2.0 * i / 100;
            const double lhs = sw.eval(t);
            const double rhs = a * su.eval(t) + c * sv.eval(t);
            CHECK(std::abs(lhs - rhs) <= 10 * ctx.tolerance() * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("build errors") {
    const auto g = random_grid(8);
    CHECK_THROWS_AS(build_spline(g, 3, BoundaryVector<double>({g.b0(), 1.0}), ctx), LengthMismatch);
    CHECK_THROWS_AS(build_spline(g, 2, BoundaryVector<double>({g.b0(), 1.0}), ctx), ParityViolation);
    CHECK_THROWS_AS(build_spline(g, 0, BoundaryVector<double>({g.b0()}), ctx), DomainError);
}

TEST_CASE("JSON round trip") {
    SUBCASE("binary64") {
        const auto g = random_grid(9, 1.3);
        const auto s = build_spline(g, 3, random_boundary(g, 3), ctx);
        const std::string doc = spline_to_json(s, ctx);
        CHECK(spline_json_digits(doc) == 15);
        const auto r = spline_from_json<double>(doc);
        CHECK(r.theta() == 3);
        CHECK(r.n() == 9);
        CHECK(r.grid().period() == s.grid().period());
        CHECK(r.deriv() == s.deriv());
        for (int i = 0; i <= 50; ++i) CHECK(r.eval(1.3 * i / 50) == s.eval(1.3 * i / 50));
    }
    SUBCASE("high precision") {
        const PrecisionContext hp(40);
        const PrecisionScope scope(hp);
        const auto f = make_test_function<HighReal>("g1");
        const auto g = f.sample(11);
        const auto s = build_spline(g, 5, method1_boundary(g, 5, hp), hp);
        const std::string doc = spline_to_json(s, hp);
        CHECK(spline_json_digits(doc) == 40);
        const auto r = spline_from_json<HighReal>(doc);
        for (int mu = 0; mu <= 5; ++mu)
            for (int j = 0; j < 11; ++j) CHECK(r.deriv(mu, j) == s.deriv(mu, j));
    }
    SUBCASE("malformed documents") {
        CHECK_THROWS_AS(spline_from_json<double>("{"), DomainError);
        CHECK_THROWS_AS(spline_from_json<double>("{\"format\": \"other\"}"), DomainError);
        const auto g = random_grid(5);
        auto doc = spline_to_json(build_spline(g, 1, BoundaryVector<double>({g.b0()}), ctx), ctx);
        const auto pos = doc.find("\"version\": 1");
        REQUIRE(pos != std::string::npos);
        doc.replace(pos, 12, "\"version\": 9");
        CHECK_THROWS_AS(spline_from_json<double>(doc), DomainError);
    }
}
