#include <doctest.h>

#include <cmath>

#include "weilab/quadrature.hpp"

using namespace weilab;

TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int n : {4, 10, 20}) {
        const GaussRule& g = gauss_legendre(n);
        double wsum = 0;
        for (double w : g.w) wsum += w;
        CHECK(wsum == doctest::Approx(2).epsilon(1e-14));
        // degree 2n-1 is exact
        double s = 0;
        for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 2 * n - 2);
        CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
}

TEST_CASE("graded panels handle a log singularity") {
    auto f = [](double x) { return std::log(x); };
    auto br = graded_breaks(0, 1, {0.0}, 4);
    CHECK(integrate_breaks(f, br) == doctest::Approx(-1).epsilon(1e-13));
    auto g = [](double x) { return std::log(std::abs(x - 0.3)); };
    double exact = 0.3 * std::log(0.3) - 0.3 + 0.7 * std::log(0.7) - 0.7;
    CHECK(integrate_breaks(g, graded_breaks(0, 1, {0.3}, 4)) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("doubling converges and reports an error") {
    auto f = [](double x) { return std::cos(40 * x); };
    QuadResult r = integrate_doubling(f, uniform_breaks(0, 3, 1), 1e-13, 1e-16);
    CHECK(r.value == doctest::Approx(std::sin(120.0) / 40).epsilon(1e-12));
    CHECK(r.error < 1e-12);
    auto bad = [](double x) { return 1 / x; };
    CHECK_THROWS(integrate_doubling(bad, uniform_breaks(0, 1, 1), 1e-14, 0, 20, 3));
}
