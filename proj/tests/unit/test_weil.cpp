#include <doctest.h>

#include <cmath>

#include "h_oracles.hpp"
#include "weilab/weil.hpp"

using namespace weilab;

namespace {
TestFunction ref_g() { return TestFunction({{-0.15, 0.15, 1.0}, {0.15, 0.15, -1.0}}); }
TestFunction two_place_g() { return TestFunction({{-0.2, 0.2, 1.0}, {0.2, 0.2, -1.0}}); }
NSLattice archimedean_only(double mu) {
    PlaceSet none;
    none.mu = mu;
    return build_lattice(none, true, 1);
}
}  // namespace

TEST_CASE("finite place terms") {
    HFunction h(two_place_g());
    CHECK(h.mu() == doctest::Approx(std::exp(-0.8)));
    double direct = std::log(2.0) * (h(2.0) + h(0.5) / 2);
    CHECK(finite_place_term(h, 2) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(finite_place_term(h, 2) == doctest::Approx(2 * std::log(2.0) * h(2.0)).epsilon(1e-9));
    // the next five primes above 1/mu contribute exactly nothing
    for (int64_t p : {3, 5, 7, 11, 13}) CHECK(finite_place_term(h, p) == 0.0);
    CHECK(finite_place_term(HFunction(zero_function(0.3)), 2) == 0.0);
    CHECK_THROWS(finite_place_term(h, 4));
}

TEST_CASE("archimedean-only prime sum against a 2D quadrature") {
    HFunction h(ref_g());
    PrimeSum s = prime_sum_fourier(h, archimedean_only(h.mu()));
    double tp = 2 * oracle::pi;
    CHECK(std::abs(s.value + 4 * oracle::full_pair_2d(h, tp, tp, 150)) < 4e-9);
    CHECK(s.tail == 0);
    CHECK(prime_sum_fourier(HFunction(zero_function(0.6)), archimedean_only(0.6)).value == 0);
}

TEST_CASE("weil breakdown invariants") {
    HFunction h(two_place_g());
    NSLattice lat = build_lattice(compute_place_set(h.mu()), true, int64_t(1) << 24);
    WeilBreakdown w = weil_distribution(h, lat);
    double fin = 0;
    for (auto& [p, v] : w.finite_terms) {
        fin += v;
        if (double(p) >= 1 / h.mu()) CHECK(v == 0.0);
    }
    CHECK(w.finite_terms.size() == 6);
    CHECK(w.archimedean == w.prime_sum_total - fin);
    CHECK(w.delta == (w.h_hat_0 + w.h_hat_1).real() - w.prime_sum_total);
    // balanced bumps: the moments vanish
    CHECK(std::abs(w.h_hat_0) + std::abs(w.h_hat_1) <= 1e-9 * h(1.0));
    auto j = to_json(w);
    CHECK(j.contains("quadrature_error_estimate"));
    CHECK(j["finite_terms"].contains("2"));

    WeilBreakdown z = weil_distribution(HFunction(zero_function(0.6)), archimedean_only(0.6));
    CHECK(z.delta == 0);
    CHECK(z.prime_sum_total == 0);
}

TEST_CASE("two routes to the p = 2 contribution agree") {
    HFunction h(two_place_g());
    PlaceSet ps = compute_place_set(h.mu());
    double arch = prime_sum_fourier(h, archimedean_only(h.mu())).value;
    double fin = finite_place_term(h, 2);
    double prev = 0;
    for (int e : {24, 25}) {
        PrimeSum s = prime_sum_fourier(h, build_lattice(ps, true, int64_t(1) << e));
        double attributed = s.value - arch;
        CHECK(std::abs(attributed / fin - 1) < 1e-4);
        if (e == 25) CHECK(std::abs(s.value - prev) <= 2 * (s.quad_error + s.tail) + 1e-12);
        prev = s.value;
    }
}

TEST_CASE("regression value for the reference bump pair") {
    HFunction h(ref_g());
    WeilBreakdown w = weil_distribution(h, archimedean_only(h.mu()));
    CHECK(w.finite_terms.begin()->second == 0.0);
    CHECK(w.delta == doctest::Approx(0.01388688426).epsilon(1e-8));
    CHECK(w.delta == doctest::Approx(-w.archimedean).epsilon(1e-9));
}
