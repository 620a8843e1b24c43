#include "weilab/weil.hpp"

#include <cmath>
#include <stdexcept>

namespace weilab {

namespace {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

double finite_place_term(const HFunction& h, int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("finite_place_term: p must be prime");
    double lp = std::log(double(p)), total = 0, top = 1 / h.mu();
    double pm = double(p);
    for (int m = 1; pm < top; ++m, pm *= double(p)) total += lp * (h(pm) + h(1 / pm) / pm);
    return total;
}

PrimeSum prime_sum_fourier(const HFunction& h, const NSLattice& lattice, const QuadConfig& q,
                           double tail_tolerance) {
    PrimeSum out;
    if (h.source().is_zero()) return out;
    LatticeSum s = lattice_pair_sum(h, lattice, lattice, full_pair, q);
    out.value = -4 * s.value;
    out.quad_error = 4 * s.quad_error;
    out.tail = 4 * s.tail;
    if (out.tail > tail_tolerance * (1 + std::abs(out.value)))
        throw std::runtime_error("prime_sum_fourier: lattice tail above tolerance; raise the bound");
    return out;
}

WeilBreakdown weil_distribution(const HFunction& h, const NSLattice& lattice, const QuadConfig& q) {
    WeilBreakdown w;
    const PlaceSet& ps = lattice.places;
    for (int64_t p : ps.primes) w.finite_terms[p] = finite_place_term(h, p);
    int64_t p = ps.primes.empty() ? 1 : ps.primes.back();
    for (int extra = 0; extra < 5;) {
        ++p;
        if (!is_prime(p)) continue;
        if (double(p) >= 1 / ps.mu) {
            w.finite_terms[p] = finite_place_term(h, p);
            ++extra;
        }
    }
    if (h.source().is_zero()) return w;
    w.h_hat_0 = mellin_h(h, 0.0);
    w.h_hat_1 = mellin_h(h, 1.0);
    PrimeSum s = prime_sum_fourier(h, lattice, q);
    w.prime_sum_total = s.value;
    double fin = 0;
    for (auto& [prime, v] : w.finite_terms) fin += v;
    w.archimedean = s.value - fin;
    w.delta = (w.h_hat_0 + w.h_hat_1).real() - s.value;
    w.quadrature_error_estimate = s.quad_error + s.tail;
    w.lattice_tail = s.tail;
    return w;
}

nlohmann::json to_json(const WeilBreakdown& w) {
    nlohmann::json fin = nlohmann::json::object();
    for (auto& [p, v] : w.finite_terms) fin[std::to_string(p)] = v;
    return {{"h_hat_0", {w.h_hat_0.real(), w.h_hat_0.imag()}},
            {"h_hat_1", {w.h_hat_1.real(), w.h_hat_1.imag()}},
            {"finite_terms", fin},
            {"prime_sum_total", w.prime_sum_total},
            {"archimedean", w.archimedean},
            {"delta", w.delta},
            {"quadrature_error_estimate", w.quadrature_error_estimate},
            {"lattice_tail", w.lattice_tail}};
}

}  // namespace weilab
