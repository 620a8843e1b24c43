#pragma once

#include <complex>
#include <functional>

namespace weilab {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// Vertical line Re s = c, truncated at |Im s| <= height.
struct ContourSpec {
    double c = 0.25;
    double height = 60;
    int nodes = 400;
    double tolerance = 1e-7;
    int max_doublings = 6;
};

struct LineIntegral {
    cplx value;
    double tail_estimate = 0;
};

cplx log_gamma_complex(cplx s);
// Throws std::domain_error at the poles s = 0, -1, -2, ...
cplx gamma_complex(cplx s);

// Gamma(s) cos(pi s / 2), the regularized value of int_0^inf t^{s-1} cos t dt, 0 < Re s < 1.
cplx cosine_moment(cplx s);

// 2^s pi^{s-1} Gamma(1-s) sin(pi s / 2).
cplx chi(cplx s);

double sine_integral(double x);
cplx expint_e1(cplx z);

// Abel-regularized int_1^inf log v cos(w v) dv = -(pi/2 - Si(w))/w.
double osc_log_cos_tail(double omega);
// Abel-regularized int_0^inf log t cos(w t) dt = -pi/(2w).
double osc_log_cos_full(double omega);

// int_1^inf log v sin(a v)/v dv (odd in a, zero at a = 0). Its a-derivative is osc_log_cos_tail.
double log_sine_tail(double a);
// int_0^inf log t sin(a t)/t dt = -(pi/2) sgn(a) (gamma + log|a|), zero at a = 0.
double log_sine_full(double a);
// int_1^inf log v cos(a v)/v^2 dv (even in a, equal to 1 at a = 0).
double log_cos_tail_sq(double a);
// int_1^inf log v sin(a v)/v^3 dv (odd in a).
double log_sine_tail_cube(double a);
// int_0^1 log v cos(a v) dv = -Si(a)/a, equal to -1 at a = 0.
double log_cos_unit(double a);

// (1/(2 pi i)) int over the line Re s = c of f(s) ds, truncated at contour.height.
LineIntegral mellin_line_integral(const ContourSpec& contour,
                                  const std::function<cplx(cplx)>& integrand);

}  // namespace weilab
