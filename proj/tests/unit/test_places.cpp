#include <doctest.h>

#include <cmath>
#include <set>

#include "weilab/places.hpp"

using namespace weilab;

TEST_CASE("place sets use strict p < 1/mu") {
    CHECK(compute_place_set(0.6).primes.empty());
    CHECK(compute_place_set(0.5).primes.empty());
    CHECK(compute_place_set(0.49).primes == std::vector<int64_t>{2});
    CHECK(compute_place_set(1.0 / 3).primes == std::vector<int64_t>{2});
    CHECK(compute_place_set(0.3).primes == std::vector<int64_t>{2, 3});
    PlaceSet ps = compute_place_set(0.1);
    CHECK(ps.primes == std::vector<int64_t>{2, 3, 5, 7});
    CHECK(ps.rho_exact == Rational(48, 210));
    CHECK_THROWS(compute_place_set(1.5));
}

TEST_CASE("N_S enumeration matches trial division") {
    PlaceSet ps = compute_place_set(0.3);
    std::vector<int64_t> brute;
    for (int64_t n = 1; n <= 1000; ++n) {
        int64_t m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        if (m == 1) brute.push_back(n);
    }
    CHECK(enumerate_ns(ps, 1000) == brute);
    CHECK(squarefree_ns(ps) == std::vector<int64_t>{1, 2, 3, 6});
    CHECK(mobius_ns(ps, 6) == 1);
    CHECK(mobius_ns(ps, 3) == -1);
    CHECK(mobius_ns(ps, 4) == 0);
}

TEST_CASE("grouped lattice weights equal varpi in both modes") {
    // sum over k | squarefree, k' | k of mu(k)/k factorises into the local weights
    for (double mu : {0.45, 0.3, 0.15}) {
        PlaceSet ps = compute_place_set(mu);
        int64_t B = 4096;
        int64_t kmax = squarefree_ns(ps).back();
        for (bool cop : {true, false}) {
            auto freqs = lattice_frequencies(build_lattice(ps, cop, B));
            int checked = 0;
            for (const Frequency& f : freqs) {
                if (f.num * kmax > B) continue;
                CHECK(f.weight == varpi_weight(ps, f.num, f.den));
                ++checked;
            }
            CHECK(checked > 10);
        }
    }
}

TEST_CASE("varpi local factors") {
    PlaceSet ps = compute_place_set(0.3);
    CHECK(varpi_weight(ps, 1, 1) == Rational(1, 3));
    CHECK(varpi_weight(ps, 1, 2) == Rational(-1, 3));
    CHECK(varpi_weight(ps, 9, 2) == Rational(-1, 3));
    CHECK(varpi_weight(ps, 1, 4) == 0);
    CHECK(varpi_weight(ps, 4, 3) == Rational(-1, 6));
    CHECK_THROWS(varpi_weight(ps, 5, 7));
}

TEST_CASE("sum of varpi(gamma)/gamma vanishes along the lattice") {
    // sum_gamma varpi(gamma)/gamma over gamma>0 is zero (the local sums cancel);
    // partial sums settle at the size of the tail bound
    PlaceSet ps = compute_place_set(0.45);
    NSLattice lat = build_lattice(ps, true, int64_t(1) << 30);
    double s = 0;
    for (const Frequency& f : lattice_frequencies(lat)) s += f.weight.convert_to<double>() / f.value();
    CHECK(std::abs(s) < 1e-8);
}

TEST_CASE("reciprocal tail for a single prime is geometric") {
    PlaceSet ps = compute_place_set(0.45);
    for (int64_t B : {1, 5, 1000}) {
        int m = 0;
        while ((int64_t(1) << m) <= B) ++m;
        CHECK(ns_reciprocal_tail(ps, B) == doctest::Approx(std::pow(2.0, 1 - m)).epsilon(1e-12));
    }
    NSLattice lat = build_lattice(ps, true, 64);
    CHECK(lat.tail_bound > 0);
    CHECK(lattice_csv(lat).rfind("k,l,weight\n", 0) == 0);
}
