#include "weilab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weilab/parallel.hpp"
#include "weilab/quadrature.hpp"
#include "weilab/special.hpp"

namespace weilab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Breakpoints on [a, b] resolving oscillation at frequency w and grading toward cuts.
std::vector<double> panel_breaks(double a, double b, double w, const std::vector<double>& cuts,
                                 const QuadConfig& q) {
    int base = 16 + int(std::ceil(q.panels_per_period * w * (b - a) / (2 * kPi)));
    return graded_breaks(a, b, cuts, base);
}

KernelValue integrate(const std::function<double(double)>& f, const std::vector<double>& br,
                      const HFunction& h, const QuadConfig& q) {
    QuadResult r = integrate_doubling(f, br, q.rel_tol, q.abs_tol * std::max(h.max_abs(), 1e-300));
    return {r.value, r.error};
}

}  // namespace

double by_parts_constant(const HFunction& h) {
    return std::abs(h(1.0)) + h.abs_deriv_integral(1.0, 1 / h.mu());
}

KernelValue inner_cos_transform(const HFunction& h, double omega, const QuadConfig& q) {
    if (!(omega > 0)) throw std::invalid_argument("inner_cos_transform: need omega > 0");
    if (h.source().is_zero()) return {};
    double b = 1 / h.mu();
    auto f = [&](double u) { return h(u) * std::cos(omega * u); };
    return integrate(f, panel_breaks(1, b, omega, {}, q), h, q);
}

InnerExpansion inner_cos_expansion(const HFunction& h, double omega, const QuadConfig& q) {
    if (!(omega > 0)) throw std::invalid_argument("inner_cos_expansion: need omega > 0");
    InnerExpansion e;
    if (h.source().is_zero()) return e;
    e.sine_term = -h(1.0) * std::sin(omega) / omega;
    e.cosine_term = -h.deriv(1.0, 1) * std::cos(omega) / (omega * omega);
    double b = 1 / h.mu();
    auto f = [&](double u) { return h.deriv(u, 2) * std::cos(omega * u); };
    e.remainder = -integrate(f, panel_breaks(1, b, omega, {}, q), h, q).value / (omega * omega);
    return e;
}

KernelValue full_pair(const HFunction& h, double w1, double w2, const QuadConfig& q) {
    if (!(w1 > 0 && w2 > 0)) throw std::invalid_argument("full_pair: frequencies must be positive");
    if (h.source().is_zero()) return {};
    double a = h.mu(), b = 1 / h.mu();
    // -log_sine_full(w2 u +- w1) = (pi/2) sgn(u +- r) (gamma + log w2 + log|u +- r|), r = w1/w2.
    // The constant part integrates against h' in closed form, leaving an O(1) log integrand
    // with one singularity at r (no cancellation for large w2).
    double r = w1 / w2;
    auto f = [&](double u) {
        double d = u - r;
        // graded panels can put a node exactly on r; the point has measure zero
        if (d == 0) return h.deriv(u, 1) * std::log(u + r);
        return h.deriv(u, 1) * (std::log(u + r) + (d > 0 ? 1 : -1) * std::log(std::abs(d)));
    };
    KernelValue k = integrate(f, panel_breaks(a, b, 0, {r}, q), h, q);
    double total = kPi / 2 * (k.value - 2 * (kEulerGamma + std::log(w2)) * h(r));
    return {total / (2 * w2), kPi / 2 * k.error / (2 * w2)};
}

KernelValue tail_pair(const HFunction& h, double w1, double w2, const QuadConfig& q) {
    if (!(w1 > 0 && w2 > 0)) throw std::invalid_argument("tail_pair: frequencies must be positive");
    if (h.source().is_zero()) return {};
    double h0 = h(1.0);
    if (w2 > q.direct_limit) {
        // three by-parts terms of the inner transform, integrated in closed form against
        // log v cos(w1 v); the next term bounds the error
        double h1 = h.deriv(1.0, 1), h2 = h.deriv(1.0, 2), h3 = h.deriv(1.0, 3);
        double sp = w2 + w1, sm = w2 - w1;
        double v = -h0 / (2 * w2) * (log_sine_tail(sp) + log_sine_tail(sm)) -
                   h1 / (2 * w2 * w2) * (log_cos_tail_sq(sp) + log_cos_tail_sq(sm)) +
                   h2 / (2 * w2 * w2 * w2) * (log_sine_tail_cube(sp) + log_sine_tail_cube(sm));
        double err = 2 * std::abs(h3) / (9 * std::pow(w2, 4));
        return {v, err};
    }
    double b = 1 / h.mu();
    auto f = [&](double u) {
        return h.deriv(u, 1) * (log_sine_tail(w2 * u + w1) + log_sine_tail(w2 * u - w1));
    };
    KernelValue r = integrate(f, panel_breaks(1, b, w2, {w1 / w2}, q), h, q);
    double v = -(h0 * (log_sine_tail(w2 + w1) + log_sine_tail(w2 - w1)) + r.value) / (2 * w2);
    return {v, r.error / (2 * w2)};
}

KernelValue unit_pair(const HFunction& h, double w1, double w2, const QuadConfig& q) {
    if (!(w1 > 0 && w2 > 0)) throw std::invalid_argument("unit_pair: frequencies must be positive");
    if (h.source().is_zero()) return {};
    double a = 1, b = 1 / h.mu();
    if (w2 <= q.direct_limit || q.window * 2 >= w2 * (b - a)) {
        auto f = [&](double u) { return h(u) * (log_cos_unit(w2 * u + w1) + log_cos_unit(w2 * u - w1)); };
        KernelValue r = integrate(f, panel_breaks(a, b, w2, {}, q), h, q);
        return {0.5 * r.value, 0.5 * r.error};
    }
    // For |arg| > window, -Si(arg)/arg is replaced by its mean -pi/(2|arg|); the dropped
    // oscillation is O(1/arg^2) with period 2 pi / w2 in u. Inside the window the integral is
    // taken in arg itself so that w2 u - w1 is never formed by cancellation.
    double A = q.window;
    KernelValue tot;
    for (double sg : {1.0, -1.0}) {
        double lo = std::clamp((-A - sg * w1) / w2, a, b), hi = std::clamp((A - sg * w1) / w2, a, b);
        auto smooth = [&](double u) { return -h(u) * kPi / (2 * std::abs(w2 * u + sg * w1)); };
        for (auto [x0, x1] : {std::pair{a, lo}, std::pair{hi, b}}) {
            if (!(x1 > x0)) continue;
            // grade toward the pole of 1/|arg| (just outside the piece) for the 1/(u - u0) shape
            double pole = std::clamp(-sg * w1 / w2, x0, x1);
            KernelValue r = integrate(smooth, panel_breaks(x0, x1, 0, {pole}, q), h, q);
            tot.value += r.value;
            tot.error += r.error;
        }
        if (hi > lo) {
            double s0 = std::max(-A, w2 * lo + sg * w1), s1 = std::min(A, w2 * hi + sg * w1);
            auto inner = [&](double t) { return h((t - sg * w1) / w2) * log_cos_unit(t) / w2; };
            KernelValue r = integrate(inner, panel_breaks(s0, s1, 1, {}, q), h, q);
            tot.value += r.value;
            tot.error += r.error;
        }
    }
    double dropped = (2 * h.max_abs() + h.abs_deriv_integral(a, b)) / (A * A * w2);
    return {0.5 * tot.value, 0.5 * tot.error + dropped};
}

LatticeSum lattice_pair_sum(const HFunction& h, const NSLattice& l1, const NSLattice& l2,
                            const PairKernel& kernel, const QuadConfig& q, bool keep_terms) {
    LatticeSum out;
    std::vector<Frequency> f1 = lattice_frequencies(l1), f2 = lattice_frequencies(l2);
    auto half_weights = [](const NSLattice& l) {
        NSLattice hl = build_lattice(l.places, l.coprime_mode, std::max<int64_t>(1, l.bound / 2));
        std::map<std::pair<int64_t, int64_t>, double> m;
        for (const Frequency& f : lattice_frequencies(hl)) m[{f.num, f.den}] = f.weight.convert_to<double>();
        return m;
    };
    auto h1 = half_weights(l1), h2 = half_weights(l2);
    size_t n1 = f1.size(), n2 = f2.size();
    std::vector<KernelValue> kv = parallel_map<KernelValue>(
        n1 * n2,
        [&](size_t idx) {
            const Frequency& b = f1[idx / n2];
            const Frequency& g = f2[idx % n2];
            return kernel(h, 2 * kPi * b.value(), 2 * kPi * g.value(), q);
        },
        q.workers);
    std::vector<double> full(n1 * n2), half(n1 * n2), err(n1 * n2);
    for (size_t i = 0; i < n1; ++i) {
        double wi = f1[i].weight.convert_to<double>();
        auto hi = h1.find({f1[i].num, f1[i].den});
        for (size_t j = 0; j < n2; ++j) {
            size_t idx = i * n2 + j;
            double wj = f2[j].weight.convert_to<double>();
            full[idx] = wi * wj * kv[idx].value;
            err[idx] = std::abs(wi * wj) * kv[idx].error;
            auto hj = h2.find({f2[j].num, f2[j].den});
            if (hi != h1.end() && hj != h2.end()) half[idx] = hi->second * hj->second * kv[idx].value;
            if (keep_terms) out.terms.push_back({f1[i], f2[j], wi * wj, kv[idx].value});
        }
    }
    out.value = pairwise_sum(full);
    out.half_bound_value = pairwise_sum(half);
    out.quad_error = pairwise_sum(err);
    out.tail = std::abs(out.value - out.half_bound_value);
    return out;
}

}  // namespace weilab
