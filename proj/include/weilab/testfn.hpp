#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

namespace weilab {

struct Bump {
    double center = 0;      // in log x
    double half_width = 1;  // in log units
    double amplitude = 1;
};

// g(x) = sum of amplitude * exp(-1/(1-t^2)), t = (log x - center)/half_width.
class TestFunction {
public:
    TestFunction() = default;
    // mu is the tightest value with support(g) inside (sqrt(mu), 1/sqrt(mu)); empty_mu is
    // used when there are no bumps at all
    explicit TestFunction(std::vector<Bump> bumps, double empty_mu = 0.5488116360940264);

    const std::vector<Bump>& bumps() const { return bumps_; }
    double mu() const { return mu_; }
    // log x of the support edge: support(g) is inside exp([-log_radius, log_radius]).
    double log_radius() const { return -0.5 * std::log(mu_); }
    bool is_zero() const;
    // Same bumps with a smaller support parameter (a larger window); throws unless
    // 0 < mu <= this->mu().
    TestFunction with_mu(double mu) const;

    double operator()(double x) const;
    // G(t) = g(e^t) and its first two t-derivatives
    double log_eval(double t, int deriv = 0) const;

private:
    std::vector<Bump> bumps_;
    double mu_ = 0.5;
};

TestFunction make_bump(double center, double half_width, double amplitude);

// The zero function with a prescribed support parameter.
TestFunction zero_function(double mu);

struct ProjectionOptions {
    // when no free gap exists inside the window, place the counter bump just outside it
    bool allow_widen = true;
    double min_gap = 0.02;
};

TestFunction project_vanishing_moment(const TestFunction& g, const ProjectionOptions& opt = {});

// Two or three random bumps whose support reaches exactly log radius L, L drawn uniformly
// from [L_lo, L_hi) (so mu = e^{-2L}). Deterministic for a given seed and standard library.
TestFunction random_test_function(uint64_t seed, double L_lo, double L_hi);

// h(x) = int g(xy) g(y) dy, cached on a uniform grid in log x with quintic Hermite interpolation.
class HFunction {
public:
    explicit HFunction(const TestFunction& g, double rel_tol = 1e-11);

    const TestFunction& source() const { return g_; }
    double mu() const { return g_.mu(); }
    double spacing() const { return step_; }
    int grid_size() const { return int(H_.size()); }
    double interpolation_error() const { return interp_err_; }
    double max_abs() const { return max_abs_; }

    double operator()(double x) const { return eval(x, 0); }
    // order 0..2 are accurate; order 3 is the interpolant's derivative, for error estimates only
    double deriv(double x, int order) const { return eval(x, order); }
    // H(s) = h(e^s) and its s-derivatives (order 3 as above)
    double log_eval(double s, int deriv = 0) const;
    // direct quadrature of H, H', H'' at s (no cache)
    double log_direct(double s, int deriv = 0) const;

    // integral of |h'| over [a, b]
    double abs_deriv_integral(double a, double b) const;

private:
    double eval(double x, int order) const;
    void build(int intervals);

    TestFunction g_;
    double S_ = 0;  // support of H is [-S_, S_]
    double step_ = 0;
    std::vector<double> H_, H1_, H2_;
    double interp_err_ = 0;
    double max_abs_ = 0;
};

HFunction autocorrelate(const TestFunction& g);

std::complex<double> mellin_g(const TestFunction& g, std::complex<double> s);
std::complex<double> mellin_h(const HFunction& h, std::complex<double> s);

// int_0^1 exp(-1/(1-t^2)) dt doubled: the mass of the standard profile on [-1, 1].
double bump_profile_mass();

nlohmann::json to_json(const TestFunction& g);
TestFunction test_function_from_json(const nlohmann::json& j);

}  // namespace weilab
