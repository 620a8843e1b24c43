#pragma once
// Brute-force double integrals over the autocorrelation h, used as references for the
// lattice kernels. Only point values of h (and h', h'' at u = 1) enter here.

#include <cmath>

#include "oracles.hpp"
#include "weilab/testfn.hpp"

namespace oracle {

// int_lo^{1/mu} h(u) cos(w u) du by plain quadrature
inline double h_cos(const weilab::HFunction& h, double w, double lo) {
    double b = 1 / h.mu();
    auto f = [&](double u) { return h(u) * std::cos(w * u); };
    return quad(f, lo, b, int(w * (b - lo) / pi) + 24);
}

// int_0^V log v cos(w1 v) Hfull(w2 v) dv, Hfull over (mu, 1/mu); Hfull decays fast
inline double full_pair_2d(const weilab::HFunction& h, double w1, double w2, double V) {
    auto f = [&](double v) { return std::log(v) * std::cos(w1 * v) * h_cos(h, w2 * v, h.mu()); };
    auto br = weilab::graded_breaks(0, V, {0.0}, int(V * std::max(w1, w2) / pi) + 8);
    return weilab::integrate_breaks(f, br, 20);
}

// int_0^1 log v cos(w1 v) H(w2 v) dv, H over (1, 1/mu)
inline double unit_pair_2d(const weilab::HFunction& h, double w1, double w2) {
    auto f = [&](double v) { return std::log(v) * std::cos(w1 * v) * h_cos(h, w2 * v, 1.0); };
    return weilab::integrate_breaks(f, weilab::graded_breaks(0, 1, {0.0}, 16), 20);
}

// Abel value of int_1^inf log v cos(w v) H(w v) dv (equal frequencies w1 = w2 = w):
// quadrature on (1, V0), then four by-parts terms of H with the oscillating pieces
// eps-damped and extrapolated, the non-oscillating pieces in closed form.
inline double tail_pair_abel(const weilab::HFunction& h, double w, double V0 = 90) {
    auto body_f = [&](double v) { return std::log(v) * std::cos(w * v) * h_cos(h, w * v, 1.0); };
    double body = quad(body_f, 1, V0, int(2 * w * V0 / pi) + 8);
    double e = 1e-4;
    double c[4] = {-h(1.0), -h.deriv(1.0, 1), h.deriv(1.0, 2),
                   (h.deriv(1.0 + e, 2) - h.deriv(1.0 - e, 2)) / (2 * e)};
    double tail = 0;
    for (int m = 0; m < 4; ++m) {
        double scale = 0.5 * c[m] / std::pow(w, m + 1);
        bool odd = m % 2;
        // cos(wv) sin(wv) = sin(2wv)/2, cos(wv) cos(wv) = (cos(2wv) + 1)/2
        auto osc = [&](double v) {
            return std::log(v) * (odd ? std::cos(2 * w * v) : std::sin(2 * w * v)) / std::pow(v, m + 1);
        };
        tail += scale * abel_limit([&](double eps) { return damped(osc, V0, eps, 2 * w); });
        if (odd) tail += scale * std::pow(V0, -m) * (std::log(V0) / m + 1.0 / (m * m));
    }
    return body + tail;
}

}  // namespace oracle
