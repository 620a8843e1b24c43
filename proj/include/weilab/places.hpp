#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace weilab {

using Rational = boost::multiprecision::cpp_rational;

struct PlaceSet {
    double mu = 0.5;
    std::vector<int64_t> primes;  // all primes p < 1/mu
    Rational rho_exact = 1;       // prod (1 - 1/p)
    double rho = 1;
};

struct LatticePair {
    int64_t k = 1;  // squarefree, built from primes of the place set
    int64_t l = 1;
    Rational weight = 1;
};

struct NSLattice {
    PlaceSet places;
    bool coprime_mode = true;
    int64_t bound = 512;
    std::vector<LatticePair> pairs;
    // sum over squarefree k of |weight(k)| * k * sum_{l > bound, l in N_S} 1/l
    double tail_bound = 0;
};

// A reduced positive rational l/k together with its accumulated weight.
struct Frequency {
    int64_t num = 1;
    int64_t den = 1;
    Rational weight = 0;
    double value() const { return double(num) / double(den); }
};

PlaceSet compute_place_set(double mu);
std::vector<int64_t> enumerate_ns(const PlaceSet& ps, int64_t bound);
std::vector<int64_t> squarefree_ns(const PlaceSet& ps);
int mobius_ns(const PlaceSet& ps, int64_t k);

// varpi(l/k) for num/den in lowest terms (sign irrelevant).
Rational varpi_weight(const PlaceSet& ps, int64_t num, int64_t den);

NSLattice build_lattice(const PlaceSet& ps, bool coprime_mode, int64_t bound);

// Groups lattice pairs by the reduced ratio l/k. Coprime-mode weights are multiplied by rho,
// so both modes describe the same varpi-weighted measure.
std::vector<Frequency> lattice_frequencies(const NSLattice& lat);

// sum over l in N_S with l > bound of 1/l (N_S truncated far beyond bound, remainder bounded)
double ns_reciprocal_tail(const PlaceSet& ps, int64_t bound);

std::string lattice_csv(const NSLattice& lat);

}  // namespace weilab
