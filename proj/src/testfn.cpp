#include "weilab/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "weilab/quadrature.hpp"

namespace weilab {

namespace {

// exp(-1/(1-t^2)) and its first two t-derivatives
double profile(double t, int deriv) {
    double q = 1 - t * t;
    if (q <= 0) return 0;
    double p = std::exp(-1 / q);
    if (deriv == 0) return p;
    if (deriv == 1) return p * (-2 * t / (q * q));
    return p * (6 * t * t * t * t - 2) / (q * q * q * q);
}

double bump_log(const Bump& b, double t, int deriv) {
    double tau = (t - b.center) / b.half_width;
    if (tau <= -1 || tau >= 1) return 0;
    return b.amplitude * profile(tau, deriv) / std::pow(b.half_width, deriv);
}

}  // namespace

double bump_profile_mass() {
    static const double mass = [] {
        auto f = [](double t) { return profile(t, 0); };
        return integrate_doubling(f, uniform_breaks(-1, 1, 4), 1e-15, 1e-17).value;
    }();
    return mass;
}

TestFunction::TestFunction(std::vector<Bump> bumps, double empty_mu) : bumps_(std::move(bumps)) {
    double L = 0;
    for (const Bump& b : bumps_) {
        if (!(b.half_width > 0)) throw std::invalid_argument("bump half_width must be positive");
        L = std::max(L, std::abs(b.center) + b.half_width);
    }
    mu_ = bumps_.empty() ? empty_mu : std::exp(-2 * L);
    if (!(mu_ > 0 && mu_ < 1)) throw std::invalid_argument("mu must lie in (0,1)");
}

bool TestFunction::is_zero() const {
    for (const Bump& b : bumps_)
        if (b.amplitude != 0) return false;
    return true;
}

TestFunction TestFunction::with_mu(double mu) const {
    if (!(mu > 0 && mu <= mu_)) throw std::invalid_argument("with_mu: need 0 < mu <= the tight support parameter");
    TestFunction out = *this;
    out.mu_ = mu;
    return out;
}

double TestFunction::log_eval(double t, int deriv) const {
    double s = 0;
    for (const Bump& b : bumps_) s += bump_log(b, t, deriv);
    return s;
}

double TestFunction::operator()(double x) const {
    if (!(x > 0)) return 0;
    return log_eval(std::log(x), 0);
}

TestFunction make_bump(double center, double half_width, double amplitude) {
    if (!(half_width > 0)) throw std::invalid_argument("make_bump: half_width must be positive");
    return TestFunction({{center, half_width, amplitude}});
}

TestFunction zero_function(double mu) { return TestFunction({}, mu); }

TestFunction project_vanishing_moment(const TestFunction& g, const ProjectionOptions& opt) {
    const double I0 = bump_profile_mass();
    double m = 0, scale = 0;
    for (const Bump& b : g.bumps()) {
        m += b.amplitude * b.half_width * I0;
        scale += std::abs(b.amplitude) * b.half_width * I0;
    }
    if (std::abs(m) <= 1e-15 * scale || scale == 0) return g;

    double L = g.log_radius();
    std::vector<std::pair<double, double>> used;
    for (const Bump& b : g.bumps()) used.push_back({b.center - b.half_width, b.center + b.half_width});
    std::sort(used.begin(), used.end());
    double best_a = 0, best_b = 0, cursor = -L;
    for (auto [a, b] : used) {
        if (a - cursor > best_b - best_a) best_a = cursor, best_b = a;
        cursor = std::max(cursor, b);
    }
    if (L - cursor > best_b - best_a) best_a = cursor, best_b = L;

    Bump counter;
    if (best_b - best_a >= opt.min_gap * L) {
        counter.center = 0.5 * (best_a + best_b);
        counter.half_width = 0.5 * (best_b - best_a);
    } else if (opt.allow_widen) {
        counter.half_width = 0.25 * L;
        counter.center = L + counter.half_width;
    } else {
        throw std::runtime_error("project_vanishing_moment: no disjoint placement for the counter bump");
    }
    counter.amplitude = -m / (counter.half_width * I0);
    std::vector<Bump> out = g.bumps();
    out.push_back(counter);
    return TestFunction(out);
}

TestFunction random_test_function(uint64_t seed, double L_lo, double L_hi) {
    if (!(L_hi > L_lo && L_lo > 0)) throw std::invalid_argument("random_test_function: bad radius range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double L = L_lo + (L_hi - L_lo) * unit(rng);
    int n = 2 + int(unit(rng) * 2);
    // keep a free gap of width L/5 so the moment projection can stay inside the window
    double gw = 0.1 * L, gc = (-L + 3 * gw) + (2 * L - 6 * gw) * unit(rng);
    std::vector<Bump> bumps;
    for (int i = 0; i < n; ++i) {
        bool left = unit(rng) < 0.5;
        double lo = left ? -L : gc + gw, hi = left ? gc - gw : L;
        Bump b;
        b.half_width = 0.5 * (hi - lo) * (0.3 + 0.7 * unit(rng));
        if (i == 0) b.center = left ? lo + b.half_width : hi - b.half_width;  // touches the edge
        else b.center = lo + b.half_width + (hi - lo - 2 * b.half_width) * unit(rng);
        b.amplitude = 2 * unit(rng) - 1;
        if (std::abs(b.amplitude) < 0.1) b.amplitude += b.amplitude < 0 ? -0.1 : 0.1;
        bumps.push_back(b);
    }
    return TestFunction(bumps);
}

// ---------------------------------------------------------------- HFunction

HFunction::HFunction(const TestFunction& g, double rel_tol) : g_(g) {
    S_ = 2 * g_.log_radius();
    if (g_.is_zero()) {
        step_ = 2 * S_;
        H_.assign(2, 0.0);
        H1_.assign(2, 0.0);
        H2_.assign(2, 0.0);
        return;
    }
    for (int n = 128;; n *= 2) {
        build(n);
        double err = 0;
        for (int k = 0; k + 1 < int(H_.size()); ++k) {
            double s = -S_ + (k + 0.5) * step_;
            err = std::max(err, std::abs(log_eval(s) - log_direct(s)));
        }
        interp_err_ = err;
        if (err <= rel_tol * max_abs_ || n >= 1 << 15) break;
    }
}

double HFunction::log_direct(double s, int deriv) const {
    double total = 0;
    for (const Bump& bi : g_.bumps()) {
        for (const Bump& bj : g_.bumps()) {
            // integrand bi(s+t) bj(t) e^t on the overlap of the two supports
            double a = std::max(bj.center - bj.half_width, bi.center - bi.half_width - s);
            double b = std::min(bj.center + bj.half_width, bi.center + bi.half_width - s);
            if (!(b > a)) continue;
            auto f = [&](double t) { return bump_log(bi, s + t, deriv) * bump_log(bj, t, 0) * std::exp(t); };
            double scale = std::abs(bi.amplitude * bj.amplitude) * (b - a) * std::exp(b) /
                           std::pow(std::min(bi.half_width, bj.half_width), deriv);
            total += integrate_doubling(f, uniform_breaks(a, b, 2), 1e-13, 1e-14 * scale).value;
        }
    }
    return total;
}

void HFunction::build(int intervals) {
    step_ = 2 * S_ / intervals;
    H_.resize(intervals + 1);
    H1_.resize(intervals + 1);
    H2_.resize(intervals + 1);
    max_abs_ = 0;
    for (int k = 0; k <= intervals; ++k) {
        double s = -S_ + k * step_;
        bool edge = (k == 0 || k == intervals);
        H_[k] = edge ? 0 : log_direct(s, 0);
        H1_[k] = edge ? 0 : log_direct(s, 1);
        H2_[k] = edge ? 0 : log_direct(s, 2);
        max_abs_ = std::max(max_abs_, std::abs(H_[k]));
    }
}

double HFunction::log_eval(double s, int deriv) const {
    if (!(s > -S_ && s < S_)) return 0;
    double u = (s + S_) / step_;
    int k = std::min(int(u), int(H_.size()) - 2);
    double th = u - k, d = step_;
    double c0 = H_[k], c1 = H1_[k] * d, c2 = 0.5 * H2_[k] * d * d;
    double A = H_[k + 1] - (c0 + c1 + c2);
    double B = H1_[k + 1] * d - (c1 + 2 * c2);
    double C = H2_[k + 1] * d * d - 2 * c2;
    double c3 = 10 * A - 4 * B + 0.5 * C;
    double c4 = -15 * A + 7 * B - C;
    double c5 = 6 * A - 3 * B + 0.5 * C;
    if (deriv == 0) return c0 + th * (c1 + th * (c2 + th * (c3 + th * (c4 + th * c5))));
    if (deriv == 1)
        return (c1 + th * (2 * c2 + th * (3 * c3 + th * (4 * c4 + th * 5 * c5)))) / d;
    if (deriv == 2) return (2 * c2 + th * (6 * c3 + th * (12 * c4 + th * 20 * c5))) / (d * d);
    // third derivative of the interpolant: only used for error estimates
    return (6 * c3 + th * (24 * c4 + th * 60 * c5)) / (d * d * d);
}

double HFunction::eval(double x, int order) const {
    if (!(x > 0)) return 0;
    double s = std::log(x);
    if (order == 0) return log_eval(s, 0);
    double h1 = log_eval(s, 1);
    if (order == 1) return h1 / x;
    double h2 = log_eval(s, 2);
    if (order == 2) return (h2 - h1) / (x * x);
    return (log_eval(s, 3) - 3 * h2 + 2 * h1) / (x * x * x);
}

double HFunction::abs_deriv_integral(double a, double b) const {
    a = std::max(a, std::exp(-S_));
    b = std::min(b, std::exp(S_));
    if (!(b > a)) return 0;
    int panels = std::max(8, int(std::ceil((std::log(b) - std::log(a)) / step_)));
    auto f = [&](double s) { return std::abs(log_eval(s, 1)); };  // |h'(x)| dx = |H'(s)| ds
    return integrate_breaks(f, uniform_breaks(std::log(a), std::log(b), panels), 8);
}

HFunction autocorrelate(const TestFunction& g) { return HFunction(g); }

std::complex<double> mellin_g(const TestFunction& g, std::complex<double> s) {
    std::complex<double> total = 0;
    for (const Bump& b : g.bumps()) {
        if (b.amplitude == 0) continue;
        auto f = [&](double t) { return bump_log(b, t, 0) * std::exp(s * t); };
        double scale = std::abs(b.amplitude) * b.half_width *
                       std::exp(std::abs(s.real()) * (std::abs(b.center) + b.half_width));
        total += integrate_doubling_c(f, uniform_breaks(b.center - b.half_width, b.center + b.half_width, 4),
                                      1e-13, 1e-15 * scale);
    }
    return total;
}

std::complex<double> mellin_h(const HFunction& h, std::complex<double> s) {
    if (h.source().is_zero()) return 0;
    double S = -std::log(h.mu());
    auto f = [&](double t) { return h.log_eval(t, 0) * std::exp(s * t); };
    int panels = std::max(8, int(std::ceil(2 * S / h.spacing())));
    double scale = h.max_abs() * 2 * S * std::exp(std::abs(s.real()) * S);
    return integrate_doubling_c(f, uniform_breaks(-S, S, panels), 1e-13, 1e-15 * scale, 10);
}

nlohmann::json to_json(const TestFunction& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Bump& b : g.bumps())
        arr.push_back({{"center", b.center}, {"half_width", b.half_width}, {"amplitude", b.amplitude}});
    return {{"bumps", arr}};
}

TestFunction test_function_from_json(const nlohmann::json& j) {
    std::vector<Bump> bumps;
    for (const auto& b : j.at("bumps"))
        bumps.push_back({b.at("center").get<double>(), b.at("half_width").get<double>(),
                         b.at("amplitude").get<double>()});
    return TestFunction(bumps);
}

}  // namespace weilab
