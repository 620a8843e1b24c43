#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace weilab {

struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule on [-1,1]; rules are computed once per order and cached.
const GaussRule& gauss_legendre(int n);

template <class T>
double magnitude(const T& v) { return std::abs(v); }

// Fixed-order Gauss-Legendre over consecutive breakpoints.
template <class F>
auto integrate_breaks(F&& f, const std::vector<double>& br, int order = 20) {
    const GaussRule& g = gauss_legendre(order);
    using R = decltype(f(0.0));
    R acc{};
    for (size_t k = 0; k + 1 < br.size(); ++k) {
        double a = br[k], b = br[k + 1];
        if (!(b > a)) continue;
        double c = 0.5 * (a + b), r = 0.5 * (b - a);
        R s{};
        for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(c + r * g.x[i]);
        acc += r * s;
    }
    return acc;
}

inline std::vector<double> uniform_breaks(double a, double b, int panels) {
    std::vector<double> br(panels + 1);
    for (int i = 0; i <= panels; ++i) br[i] = a + (b - a) * i / panels;
    br[panels] = b;
    return br;
}

// Splits every panel of br in two.
inline std::vector<double> bisect_breaks(const std::vector<double>& br) {
    std::vector<double> out;
    out.reserve(2 * br.size());
    for (size_t k = 0; k + 1 < br.size(); ++k) {
        out.push_back(br[k]);
        out.push_back(0.5 * (br[k] + br[k + 1]));
    }
    out.push_back(br.back());
    return out;
}

// Breakpoints for [a,b] with geometric grading toward each cut (log-type or kink singularities).
std::vector<double> graded_breaks(double a, double b, const std::vector<double>& cuts,
                                  int base_panels, int depth = 48);

struct QuadResult {
    double value = 0;
    double error = 0;
    int panels = 0;
};

// Panel-doubling Gauss-Legendre: bisects every panel until two successive sums agree.
template <class F>
QuadResult integrate_doubling(F&& f, std::vector<double> br, double rel, double abs_tol,
                              int order = 20, int max_rounds = 12) {
    double prev = integrate_breaks(f, br, order);
    for (int r = 0; r < max_rounds; ++r) {
        br = bisect_breaks(br);
        double cur = integrate_breaks(f, br, order);
        double err = std::abs(cur - prev);
        if (err <= std::max(abs_tol, rel * std::abs(cur)))
            return {cur, err, int(br.size()) - 1};
        prev = cur;
    }
    throw std::runtime_error("integrate_doubling: no convergence");
}

template <class F>
std::complex<double> integrate_doubling_c(F&& f, std::vector<double> br, double rel,
                                          double abs_tol, int order = 20, int max_rounds = 12) {
    std::complex<double> prev = integrate_breaks(f, br, order);
    for (int r = 0; r < max_rounds; ++r) {
        br = bisect_breaks(br);
        std::complex<double> cur = integrate_breaks(f, br, order);
        if (std::abs(cur - prev) <= std::max(abs_tol, rel * std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_doubling: no convergence");
}

}  // namespace weilab
