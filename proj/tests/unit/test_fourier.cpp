#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "splinedft/boundary.hpp"
#include "splinedft/fourier.hpp"
#include "splinedft/spline.hpp"
#include "support.hpp"

using namespace splinedft;

namespace {

const PrecisionContext ctx;

SplineFunction<double> random_spline(int theta, int n, double period) {
    const SampleGrid<double> g(period, testing::random_reals(static_cast<std::size_t>(n) + 1));
    std::vector<double> b{g.b0()};
    for (int i = 1; i < theta; ++i) b.push_back(testing::uniform());
    return build_spline(g, theta, BoundaryVector<double>(b), ctx);
}

std::complex<double> ft_at(const SplineFunction<double>& s, double omega) {
    const std::vector<double> w{omega};
    const auto z = spline_fourier_transform<double>(s, w);
    return {z[0].re, z[0].im};
}

}  // namespace

TEST_CASE("zero frequency is the integral") {
    const auto s = random_spline(5, 13, 2.5);
    const auto z = ft_at(s, 0.0);
    CHECK(z.real() == doctest::Approx(s.integrate(0.0, 2.5)).epsilon(1e-13));
    CHECK(std::abs(z.imag()) <= 1e-15);
}

TEST_CASE("constant spline") {
    const double c = 1.75, period = 3.0;
    const SampleGrid<double> g(period, std::vector<double>(8, c));
    const auto s = build_spline(g, 1, BoundaryVector<double>({0.0}), ctx);
    for (double omega : {0.1, 1.0, 7.3, -4.2, 250.0}) {
        const std::complex<double> i(0, 1);
        const auto expected = c * (1.0 - std::exp(-i * omega * period)) / (i * omega);
        const auto z = ft_at(s, omega);
        CHECK(std::abs(z - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("random theta = 3 spline against quadrature") {
    const auto s = random_spline(3, 9, 2.0);
    const double omega = 5.0;
    const auto q = testing::simpson(
        [&](double t) { return s.eval(t) * std::exp(std::complex<double>(0, -omega * t)); }, 0.0, 2.0, 1000000);
    const auto z = ft_at(s, omega);
    CHECK(std::abs(z - q) <= 1e-8 * std::abs(q));
}

TEST_CASE("high frequencies and high degree") {
    // The moment recurrence must stay accurate when omega dt is large or tiny.
    const auto s = random_spline(7, 11, 1.0);
    for (double omega : {1e-6, 0.05, 3.0, 90.0, 2000.0}) {
        const auto q = testing::simpson(
            [&](double t) { return s.eval(t) * std::exp(std::complex<double>(0, -omega * t)); }, 0.0, 1.0, 2000000);
        const auto z = ft_at(s, omega);
        CHECK_MESSAGE(std::abs(z - q) <= 1e-7 * std::max(std::abs(q), 1e-3), "omega=" << omega);
    }
}

TEST_CASE("conjugate symmetry and linearity") {
    const auto u = random_spline(3, 9, 1.5);
    const auto v = random_spline(3, 9, 1.5);
    for (double omega : {0.7, 12.0, 40.0}) {
        CHECK(std::abs(ft_at(u, -omega) - std::conj(ft_at(u, omega))) <= 1e-14 * std::abs(ft_at(u, omega)) + 1e-16);
    }
    std::vector<std::vector<double>> deriv = u.deriv();
    for (std::size_t mu = 0; mu < deriv.size(); ++mu)
        for (std::size_t j = 0; j < deriv[mu].size(); ++j) deriv[mu][j] = 2 * u.deriv()[mu][j] - 3 * v.deriv()[mu][j];
    std::vector<double> values;
    for (std::size_t j = 0; j < u.grid().values().size(); ++j) values.push_back(2 * u.grid()[j] - 3 * v.grid()[j]);
    const SplineFunction<double> w(3, SampleGrid<double>(1.5, values), deriv);
    for (double omega : {0.0, 2.0, 33.0}) {
        const auto lhs = ft_at(w, omega);
        const auto rhs = 2.0 * ft_at(u, omega) - 3.0 * ft_at(v, omega);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
    const std::vector<double> bad{std::nan("")};
    CHECK_THROWS_AS(spline_fourier_transform<double>(u, bad), DomainError);
}

TEST_CASE("analytic transform of the demo signal") {
    const double period = 81.92;
    for (double omega : {0.0, 30.0, 60.0, 61.5, 150.0}) {
        // Independent evaluation in long double.
        const std::complex<long double> a(-2.0L, -static_cast<long double>(omega));
        const std::complex<long double> i(0, 1);
        std::complex<long double> sum = 0;
        for (int sign : {1, -1}) {
            const auto e = a + static_cast<long double>(sign) * 60.0L * i;
            sum += (std::exp(e * static_cast<long double>(period)) - 1.0L) / e;
        }
        sum *= 0.5L;
        const auto z = analytic_ft_demo<double>(omega);
        CHECK(std::abs(std::complex<long double>(z.re, z.im) - sum) <= 1e-14L * std::abs(sum));
    }
    // And by brute quadrature near the resonance.
    const double omega = 59.0;
    const auto q = testing::simpson(
        [&](double t) { return std::cos(60 * t) * std::exp(-2 * t) * std::exp(std::complex<double>(0, -omega * t)); },
        0.0, 10.0, 2000000);
    const auto z = analytic_ft_demo<double>(omega);
    CHECK(std::abs(std::complex<double>(z.re, z.im) - q) <= 1e-9);
}

TEST_CASE("ft demo") {
    SUBCASE("configuration errors") {
        FtDemoConfig cfg;
        cfg.thetas = {4};
        CHECK_THROWS_AS(run_ft_demo(cfg), ParityViolation);
        cfg.thetas = {3};
        cfg.bcs = {"bogus"};
        CHECK_THROWS_AS(run_ft_demo(cfg), DomainError);
        cfg.bcs = {"zero"};
        cfg.lambda = 1;
        CHECK_THROWS_AS(run_ft_demo(cfg), DomainError);
    }
    SUBCASE("default frequency grid") {
        const auto w = FtDemoConfig::default_omegas();
        CHECK(w.front() == 0.0);
        CHECK(w.back() == doctest::Approx(700.0));
        CHECK(w[1] - w[0] == doctest::Approx(0.5));
    }
    SUBCASE("boundary quality orders the errors") {
        FtDemoConfig cfg;
        cfg.thetas = {3};
        cfg.bcs = {"zero", "exact"};
        cfg.omegas = {0.0, 20.0, 60.0, 100.0, 300.0};
        const auto res = run_ft_demo(cfg);
        REQUIRE(res.size() == 2);
        REQUIRE(res[0].ok());
        REQUIRE(res[1].ok());
        CHECK(res[0].bc == "zero");
        CHECK(res[1].bc == "exact");
        CHECK(res[0].omega.size() == 5);
        CHECK(res[0].ft_error.size() == 5);
        CHECK(res[0].t.size() == res[0].difference.size());
        CHECK(res[1].time_max_error < res[0].time_max_error);
        CHECK(res[1].ft_max_error < res[0].ft_max_error);
        CHECK(res[1].time_max_error < 1e-3);
    }
    SUBCASE("method 1 above theta = 5 needs high precision") {
        FtDemoConfig cfg;
        cfg.n = 31;
        cfg.thetas = {7};
        cfg.bcs = {"method1"};
        cfg.omegas = {1.0};
        const auto res = run_ft_demo(cfg);
        REQUIRE(res.size() == 1);
        CHECK(res[0].status.rfind("refused", 0) == 0);
    }
}
