#include "weilab/places.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace weilab {

PlaceSet compute_place_set(double mu) {
    if (!(mu > 0 && mu < 1)) throw std::invalid_argument("compute_place_set: mu must lie in (0,1)");
    PlaceSet ps;
    ps.mu = mu;
    int64_t top = int64_t(std::ceil(1 / mu)) - 1;
    if (top > 50000000) throw std::invalid_argument("compute_place_set: mu too small");
    std::vector<char> comp(std::max<int64_t>(top + 1, 2), 0);
    for (int64_t p = 2; p <= top; ++p) {
        if (comp[p]) continue;
        if (double(p) < 1 / mu) ps.primes.push_back(p);
        for (int64_t q = p * p; q <= top; q += p) comp[q] = 1;
    }
    ps.rho_exact = 1;
    for (int64_t p : ps.primes) ps.rho_exact *= Rational(p - 1, p);
    ps.rho = ps.rho_exact.convert_to<double>();
    return ps;
}

std::vector<int64_t> enumerate_ns(const PlaceSet& ps, int64_t bound) {
    if (bound < 1) throw std::invalid_argument("enumerate_ns: bound must be >= 1");
    std::vector<int64_t> out{1};
    for (int64_t p : ps.primes) {
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i) {
            int64_t v = out[i];
            while (v <= bound / p) {
                v *= p;
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int64_t> squarefree_ns(const PlaceSet& ps) {
    std::vector<int64_t> out{1};
    for (int64_t p : ps.primes) {
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius_ns(const PlaceSet& ps, int64_t k) {
    int sign = 1;
    for (int64_t p : ps.primes) {
        if (k % p) continue;
        k /= p;
        if (k % p == 0) return 0;
        sign = -sign;
    }
    if (k != 1) throw std::invalid_argument("mobius_ns: argument not supported on the place set");
    return sign;
}

static int64_t strip(const PlaceSet& ps, int64_t n) {
    for (int64_t p : ps.primes)
        while (n % p == 0) n /= p;
    return n;
}

Rational varpi_weight(const PlaceSet& ps, int64_t num, int64_t den) {
    num = std::abs(num);
    den = std::abs(den);
    if (num == 0 || den == 0) throw std::invalid_argument("varpi_weight: zero argument");
    int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (strip(ps, num) != 1 || strip(ps, den) != 1)
        throw std::invalid_argument("varpi_weight: prime support outside the place set");
    Rational w = 1;
    for (int64_t p : ps.primes) {
        int e = 0;  // |gamma|_p = p^e
        int64_t d = den;
        while (d % p == 0) d /= p, ++e;
        if (e == 0) w *= Rational(p - 1, p);
        else if (e == 1) w *= Rational(-1, p);
        else return 0;
    }
    return w;
}

NSLattice build_lattice(const PlaceSet& ps, bool coprime_mode, int64_t bound) {
    if (bound < 1) throw std::invalid_argument("build_lattice: bound must be >= 1");
    NSLattice lat;
    lat.places = ps;
    lat.coprime_mode = coprime_mode;
    lat.bound = bound;
    std::vector<int64_t> ls = enumerate_ns(ps, bound);
    double tail_weight = 0;
    for (int64_t k : squarefree_ns(ps)) {
        int mk = mobius_ns(ps, k);
        Rational w;
        if (coprime_mode) {
            int64_t phi = 1;
            for (int64_t p : ps.primes)
                if (k % p == 0) phi *= (p - 1);
            w = Rational(mk, phi);
        } else {
            w = Rational(mk, k);
        }
        for (int64_t l : ls) {
            if (coprime_mode && std::gcd(k, l) != 1) continue;
            lat.pairs.push_back({k, l, w});
        }
        tail_weight += std::abs(w.convert_to<double>()) * double(k);
    }
    lat.tail_bound = tail_weight * ns_reciprocal_tail(ps, bound);
    return lat;
}

std::vector<Frequency> lattice_frequencies(const NSLattice& lat) {
    std::map<std::pair<int64_t, int64_t>, Rational> acc;
    for (const LatticePair& pr : lat.pairs) {
        int64_t g = std::gcd(pr.k, pr.l);
        Rational w = pr.weight;
        if (lat.coprime_mode) w *= lat.places.rho_exact;
        acc[{pr.l / g, pr.k / g}] += w;
    }
    std::vector<Frequency> out;
    for (auto& [key, w] : acc)
        if (w != 0) out.push_back({key.first, key.second, w});
    std::sort(out.begin(), out.end(), [](const Frequency& a, const Frequency& b) {
        return a.num * b.den < b.num * a.den;  // ascending ratio
    });
    return out;
}

double ns_reciprocal_tail(const PlaceSet& ps, int64_t bound) {
    if (ps.primes.empty()) return 0;
    // enumerate well past the bound (capped so large place sets stay cheap); the remainder
    // beyond `far` is below 1e-9 of the sum for every place set we use
    int64_t far = bound;
    std::vector<int64_t> all;
    while (far < int64_t(4e15)) {
        int64_t next = far > int64_t(4e15) / 16 ? int64_t(4e15) : far * 16;
        std::vector<int64_t> trial = enumerate_ns(ps, next);
        if (trial.size() > 4000000 && !all.empty()) break;
        all = std::move(trial);
        far = next;
    }
    double s = 0;
    for (auto it = all.rbegin(); it != all.rend() && *it > bound; ++it) s += 1.0 / double(*it);
    return s;
}

std::string lattice_csv(const NSLattice& lat) {
    std::ostringstream os;
    os << "k,l,weight\n";
    for (const LatticePair& p : lat.pairs) os << p.k << ',' << p.l << ',' << p.weight << '\n';
    return os.str();
}

}  // namespace weilab
