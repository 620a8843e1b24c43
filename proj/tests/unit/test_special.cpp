#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weilab/special.hpp"

using namespace weilab;
using doctest::Approx;

TEST_CASE("gamma: factorials, half integers, reflection, poles") {
    CHECK(gamma_complex(5.0).real() == Approx(24).epsilon(1e-13));
    CHECK(gamma_complex(0.5).real() == Approx(std::sqrt(oracle::pi)).epsilon(1e-13));
    cplx s(0.3, 2.7);
    cplx refl = gamma_complex(s) * gamma_complex(1.0 - s) * std::sin(oracle::pi * s);
    CHECK(std::abs(refl - oracle::pi) < 1e-12);
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    for (double t : {1.0, 10.0, 30.0}) {
        double m = std::norm(gamma_complex(cplx(0.5, t)));
        CHECK(m == Approx(oracle::pi / std::cosh(oracle::pi * t)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(gamma_complex(-2.0), std::domain_error);
    CHECK_THROWS_AS(gamma_complex(0.0), std::domain_error);
    CHECK_THROWS_AS(chi(3.0), std::domain_error);
}

TEST_CASE("chi satisfies chi(s) chi(1-s) = 1") {
    for (cplx s : {cplx(0.5, 4), cplx(0.2, 11), cplx(0.7, -3)})
        CHECK(std::abs(chi(s) * chi(1.0 - s) - 1.0) < 1e-12);
}

TEST_CASE("cosine moment against quadrature") {
    // int_0^inf t^{s-1} cos t dt for real 0 < s < 1 by splitting at 2 pi N and by-parts tail
    double s = 0.4;
    auto f = [&](double t) { return std::pow(t, s - 1) * std::cos(t); };
    double X = 2 * oracle::pi * 200;
    double body = weilab::integrate_breaks(f, weilab::graded_breaks(0, X, {0.0}, 2000), 30);
    // at X = 2 pi N: sin X = 0, cos X = 1, so the by-parts remainder is -(s-1) X^{s-2}
    double tail = -(s - 1) * std::pow(X, s - 2);
    CHECK(cosine_moment(s).real() == Approx(body + tail).epsilon(1e-7));
    CHECK_THROWS(cosine_moment(1.2));
}

TEST_CASE("sine integral and E1 against quadrature") {
    for (double x : {0.1, 1.0, 3.9, 4.1, 17.0, 60.0})
        CHECK(sine_integral(x) == Approx(oracle::si(x)).epsilon(1e-13));
    CHECK(sine_integral(-2.0) == Approx(-sine_integral(2.0)));
    for (double x : {0.5, 2.5, 9.0}) {
        // E1(x) = int_0^1 exp(-x/u)/u du
        auto f = [&](double u) { return u == 0 ? 0.0 : std::exp(-x / u) / u; };
        CHECK(expint_e1(x).real() == Approx(oracle::quad(f, 0, 1, 200)).epsilon(1e-12));
    }
}

TEST_CASE("Abel oscillatory kernels against eps-damped extrapolated quadrature") {
    for (double w : {oracle::pi / 4, oracle::pi, 2 * oracle::pi, 10 * oracle::pi}) {
        double tail = oracle::abel_limit([&](double e) {
            return oracle::damped([&](double v) { return std::log(v) * std::cos(w * v); }, 1, e, w);
        });
        CHECK(std::abs(osc_log_cos_tail(w) - tail) < 1e-6);
        // full line: the (0, 1) piece is proper
        auto head = [&](double v) { return std::log(v) * std::cos(w * v); };
        double h0 = weilab::integrate_breaks(head, weilab::graded_breaks(0, 1, {0.0}, 8), 30);
        CHECK(std::abs(osc_log_cos_full(w) - (h0 + tail)) < 1e-6);
    }
}

TEST_CASE("cosine moment against eps-damped extrapolated quadrature") {
    for (double s : {0.2, 0.3, 0.5, 0.8}) {
        auto f = [&](double t) { return std::pow(t, s - 1) * std::cos(t); };
        // t = x^{1/s} removes the t^{s-1} singularity on (0, 1)
        auto sub = [&](double x) { return std::cos(std::pow(x, 1 / s)) / s; };
        double head = oracle::quad(sub, 0, 1, 8);
        double tail = oracle::abel_limit([&](double e) { return oracle::damped(f, 1, e, 1); });
        CHECK(std::abs(cosine_moment(s).real() - (head + tail)) < 1e-6);
    }
    CHECK(std::abs(cosine_moment(0.5).real() - std::sqrt(oracle::pi / 2)) < 1e-10);
    CHECK(std::abs(chi(0.5) - 1.0) < 1e-12);
}

TEST_CASE("Abel oscillatory kernels against truncated quadrature with by-parts tails") {
    for (double w : {0.7, 3.0, 12.0}) {
        double ref = oracle::osc_tail(oracle::log_over_power(0), w, false);
        CHECK(osc_log_cos_tail(w) == Approx(ref).epsilon(1e-9));
    }
    CHECK(osc_log_cos_full(2.0) == Approx(-oracle::pi / 4));
}

TEST_CASE("log_sine_tail across all evaluation regimes") {
    auto ref = oracle::log_over_power(1);
    for (double a : {0.3, 2.0, 7.9, 8.1, 15.0, 39.9, 40.1, 100.0}) {
        double r = oracle::osc_tail(ref, a, true);
        CHECK(log_sine_tail(a) == Approx(r).epsilon(1e-9).scale(1e-6));
        CHECK(log_sine_tail(-a) == Approx(-log_sine_tail(a)));
    }
    // high-precision reference values
    CHECK(log_sine_tail(7.9) == Approx(-0.0141108166796703).epsilon(1e-12));
    CHECK(log_sine_tail(40.1) == Approx(-0.000450813487454229).epsilon(1e-11));
    CHECK(log_sine_tail(100.0) == Approx(5.31636621182731e-05).epsilon(1e-10));
    CHECK(log_sine_tail(2345.0) == Approx(-1.7821825076857059067e-7).epsilon(1e-11));
    CHECK(log_sine_tail(0.0) == 0);
}

TEST_CASE("log_sine_tail derivative is the Abel cosine kernel") {
    for (double a : {1.0, 6.0, 25.0, 70.0}) {
        double h = 1e-4;
        double d = (log_sine_tail(a + h) - log_sine_tail(a - h)) / (2 * h);
        CHECK(d == Approx(osc_log_cos_tail(a)).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("log_cos_tail_sq and log_cos_unit") {
    auto ref = oracle::log_over_power(2);
    for (double a : {0.3, 5.0, 39.0, 41.0, 90.0}) {
        CHECK(log_cos_tail_sq(a) == Approx(oracle::osc_tail(ref, a, false)).epsilon(1e-9).scale(1e-6));
    }
    CHECK(log_cos_tail_sq(0.3) == Approx(0.188446217774621).epsilon(1e-11));
    CHECK(log_cos_tail_sq(1500.0) == Approx(5.0479595336918686401e-8).epsilon(1e-10));
    CHECK(log_cos_tail_sq(0.0) == 1);
    auto ref3 = oracle::log_over_power(3);
    for (double a : {0.6, 7.0, 9.0, 44.0})
        CHECK(log_sine_tail_cube(a) == Approx(oracle::osc_tail(ref3, a, true)).epsilon(1e-9).scale(1e-7));
    CHECK(log_sine_tail_cube(400.0) == Approx(5.2592475839684615661e-6).epsilon(1e-11));
    for (double a : {0.0, 0.5, 9.0, 300.0}) {
        auto f = [&](double v) { return std::log(v) * std::cos(a * v); };
        double r = weilab::integrate_breaks(f, weilab::graded_breaks(0, 1, {0.0}, 64), 30);
        CHECK(log_cos_unit(a) == Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("full-line log sine kernel against the tail kernel plus a finite piece") {
    // int_0^inf = int_0^1 + int_1^inf
    for (double a : {0.8, 5.0}) {
        auto f = [&](double v) { return std::log(v) * std::sin(a * v) / v; };
        double head = weilab::integrate_breaks(f, weilab::graded_breaks(0, 1, {0.0}, 16), 30);
        CHECK(log_sine_full(a) == Approx(head + log_sine_tail(a)).epsilon(1e-11));
    }
}

TEST_CASE("mellin line integral reproduces known inverse transforms") {
    ContourSpec c;
    c.c = 1.0;
    c.height = 40;
    c.nodes = 1600;
    c.tolerance = 1e-12;
    // (1/2 pi i) int Gamma(s) x^{-s} ds = e^{-x}
    LineIntegral r = mellin_line_integral(c, [](cplx s) { return gamma_complex(s) * std::pow(2.0, -s); });
    CHECK(std::abs(r.value - std::exp(-2.0)) < 1e-11);
    CHECK(r.tail_estimate < 1e-10);

    // slowly decaying integrand; left of the double pole at s = 1 the line integral is
    // -int_0^1 log v cos(w v) dv, since int_0^1 log v v^{-s} dv = -1/(1-s)^2
    ContourSpec c2;
    c2.c = 0.5;
    c2.height = 1000;
    c2.nodes = 40000;
    c2.tolerance = 2e-5;
    double w = 3.0;
    LineIntegral r2 = mellin_line_integral(c2, [&](cplx s) {
        return cosine_moment(s) * std::pow(w, -s) / ((s - 1.0) * (s - 1.0));
    });
    CHECK(std::abs(r2.value.real() + log_cos_unit(w)) < 1e-4);
}
