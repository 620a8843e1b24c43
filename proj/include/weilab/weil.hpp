#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include <json.hpp>

#include "weilab/places.hpp"
#include "weilab/reduction.hpp"
#include "weilab/testfn.hpp"

namespace weilab {

struct WeilBreakdown {
    std::complex<double> h_hat_0, h_hat_1;
    std::map<int64_t, double> finite_terms;  // places in S' and the next five primes (zero)
    double prime_sum_total = 0;              // Fourier route
    double archimedean = 0;                  // prime_sum_total - sum of finite_terms
    double delta = 0;
    double quadrature_error_estimate = 0;    // includes the lattice tail
    double lattice_tail = 0;
};

// sum_{m >= 1} log p [h(p^m) + p^{-m} h(p^{-m})]
double finite_place_term(const HFunction& h, int64_t p);

struct PrimeSum {
    double value = 0;
    double quad_error = 0;
    double tail = 0;  // |S(bound) - S(bound/2)|
};

// -int_{A_S} (F_S h)(y) Psi_S(y) log|y| dy = -4 sum varpi(beta) varpi(gamma) full_pair.
// Throws when the tail estimate exceeds tail_tolerance * (1 + |value|).
PrimeSum prime_sum_fourier(const HFunction& h, const NSLattice& lattice, const QuadConfig& q = {},
                           double tail_tolerance = 1e-5);

WeilBreakdown weil_distribution(const HFunction& h, const NSLattice& lattice, const QuadConfig& q = {});

nlohmann::json to_json(const WeilBreakdown& w);

}  // namespace weilab
