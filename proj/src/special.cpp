#include "weilab/special.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "weilab/quadrature.hpp"

namespace weilab {

namespace {

const cplx I(0, 1);

bool is_nonpositive_integer(cplx s) {
    return s.imag() == 0 && s.real() <= 0 && std::floor(s.real()) == s.real();
}

// Lanczos, g = 7, n = 9.
cplx lanczos_log_gamma(cplx z) {
    static const double p[] = {0.99999999999980993,  676.5203681218851,
                               -1259.1392167224028,  771.32342877765313,
                               -176.61502916214059,  12.507343278686905,
                               -0.13857109526572012, 9.9843695780195716e-6,
                               1.5056327351493116e-7};
    z -= 1;
    cplx x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Modified Lentz continued fraction for E1, |z| large or Re z > 0.
cplx e1_cf(cplx z) {
    const double tiny = 1e-300;
    cplx b = z + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -double(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

cplx e1_series(cplx z) {
    cplx sum = 0, term = 1;
    for (int k = 1; k < 400; ++k) {
        term *= -z / double(k);
        cplx add = term / double(k);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(z) - sum;
}

// Derivatives at v = 1 of log(v) v^{-p}: d^m/dv^m, m = 0..n.
std::vector<double> log_power_derivs(int p, int n) {
    std::vector<double> out(n + 1);
    double val = 1, der = 0;
    for (int m = 0; m <= n; ++m) {
        out[m] = der;
        double f = -p - m;
        der = der * f + val;
        val *= f;
    }
    return out;
}

// int_1^inf log v v^{-p} e^{i a v} dv for a >= 40 by the asymptotic series.
cplx log_power_asymptotic(double a, int p) {
    cplx z(0, -a);
    std::vector<double> d = log_power_derivs(p, 60);
    cplx sum = 0, zp = 1.0 / z;
    double last = 1e300;
    for (int n = 0; n < 60; ++n) {
        cplx term = d[n] * zp;
        double m = std::abs(term);
        if (n > 2 && m > last) break;
        sum += term;
        last = m;
        if (m < 1e-18 * std::abs(sum)) break;
        zp /= z;
    }
    return std::exp(-z) * sum;
}

// Same integral by rotating the contour to v = 1 + i s, any a > 0.
cplx log_power_rotated(double a, int p) {
    auto f = [&](double s) {
        cplx w(1.0, s);
        return std::log(w) * std::pow(w, -p) * std::exp(-a * s);
    };
    double smax = 46.0 / a;
    std::vector<double> br{0.0};
    while (br.back() < smax) {
        double s = br.back();
        double step = std::min(0.5 * std::max(s, 0.5), 2.0 / a);
        br.push_back(std::min(smax, s + step));
    }
    cplx v = integrate_breaks(f, br, 20);
    return I * std::exp(I * a) * v;
}

// Chebyshev interpolant of a complex function on [lo, hi].
struct ChebTable {
    std::vector<cplx> coef;
    double lo = 0, hi = 1;
    template <class F>
    ChebTable(F&& f, double lo_, double hi_, int n) : coef(n), lo(lo_), hi(hi_) {
        std::vector<cplx> fv(n);
        for (int k = 0; k < n; ++k) fv[k] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * (k + 0.5) / n));
        for (int j = 0; j < n; ++j) {
            cplx s = 0;
            for (int k = 0; k < n; ++k) s += fv[k] * std::cos(M_PI * j * (k + 0.5) / n);
            coef[j] = s * (2.0 / n);
        }
        coef[0] *= 0.5;
    }
    cplx operator()(double x) const {
        double t = (2 * x - lo - hi) / (hi - lo);
        cplx b1 = 0, b2 = 0;
        for (int j = int(coef.size()) - 1; j >= 1; --j) {
            cplx b0 = coef[j] + 2 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        return coef[0] + t * b1 - b2;
    }
};

// J_p(a) = int_1^inf log v v^{-p} e^{iav} dv for a >= 8, p = 1..3. The smooth envelope
// a^2 e^{-ia} J_p(a) is tabulated in a on [8, 40] and in x = 40/a on (0, 1].
class LogPowerTables {
public:
    LogPowerTables() {
        for (int p = 1; p <= 3; ++p) {
            mid_.emplace_back([p](double a) { return a * a * std::exp(-I * a) * log_power_rotated(a, p); },
                              8.0, 40.0, 56);
            far_.emplace_back(
                [p](double x) {
                    double a = 40.0 / std::max(x, 1e-6);
                    return a * a * std::exp(-I * a) * log_power_asymptotic(a, p);
                },
                0.0, 1.0, 40);
        }
    }
    cplx operator()(double a, int p) const {
        cplx env = a <= 40 ? mid_[p - 1](a) : far_[p - 1](40.0 / a);
        return std::exp(I * a) * env / (a * a);
    }

private:
    std::vector<ChebTable> mid_, far_;
};

const LogPowerTables& log_power_tables() {
    static const LogPowerTables tables;
    return tables;
}

// Taylor part of log_sine_tail: int_0^a Si(s)/s ds.
double si_over_s_integral(double a) {
    double a2 = a * a, term = a, sum = 0;
    for (int k = 0; k < 200; ++k) {
        int m = 2 * k + 1;
        double add = term / (double(m) * m);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        term *= -a2 / ((m + 1.0) * (m + 2.0));
    }
    return sum;
}

}  // namespace

cplx log_gamma_complex(cplx s) {
    if (is_nonpositive_integer(s)) throw std::domain_error("gamma: pole at nonpositive integer");
    if (s.real() < 0.5) {
        cplx sn = std::sin(M_PI * s);
        return std::log(M_PI) - std::log(sn) - lanczos_log_gamma(1.0 - s);
    }
    return lanczos_log_gamma(s);
}

cplx gamma_complex(cplx s) { return std::exp(log_gamma_complex(s)); }

// log cos z and log sin z without overflow for large |Im z| (branch irrelevant, only exp is used)
static cplx log_cos(cplx z) {
    const cplx I(0, 1);
    if (z.imag() >= 0) return -I * z + std::log((1.0 + std::exp(2.0 * I * z)) / 2.0);
    return I * z + std::log((1.0 + std::exp(-2.0 * I * z)) / 2.0);
}

static cplx log_sin(cplx z) {
    const cplx I(0, 1);
    if (z.imag() >= 0) return -I * z + std::log((1.0 - std::exp(2.0 * I * z)) * I / 2.0);
    return I * z + std::log((1.0 - std::exp(-2.0 * I * z)) / (2.0 * I));
}

cplx cosine_moment(cplx s) {
    if (!(s.real() > 0 && s.real() < 1))
        throw std::domain_error("cosine_moment: need 0 < Re s < 1");
    return std::exp(log_gamma_complex(s) + log_cos(M_PI * s / 2.0));
}

cplx chi(cplx s) {
    cplx t = 1.0 - s;
    if (is_nonpositive_integer(t)) throw std::domain_error("chi: Gamma(1-s) pole");
    if (std::abs(s.imag()) < 20)
        return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(M_PI) + log_gamma_complex(t)) *
               std::sin(M_PI * s / 2.0);
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(M_PI) + log_gamma_complex(t) +
                    log_sin(M_PI * s / 2.0));
}

cplx expint_e1(cplx z) {
    if (z == cplx(0)) throw std::domain_error("E1: singular at 0");
    if (std::abs(z) <= 2.0) return e1_series(z);
    return e1_cf(z);
}

double sine_integral(double x) {
    if (x < 0) return -sine_integral(-x);
    if (x <= 4) {
        double x2 = x * x, term = x, sum = 0;
        for (int k = 0; k < 100; ++k) {
            int m = 2 * k + 1;
            double add = term / m;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= -x2 / ((m + 1.0) * (m + 2.0));
        }
        return sum;
    }
    return M_PI / 2 + expint_e1(cplx(0, x)).imag();
}

double osc_log_cos_tail(double omega) {
    if (!(omega > 0)) throw std::domain_error("osc_log_cos_tail: need omega > 0");
    // pi/2 - Si(w) = -Im E1(iw); use it directly to avoid cancellation for large w
    double rest = omega <= 4 ? M_PI / 2 - sine_integral(omega) : -expint_e1(cplx(0, omega)).imag();
    return -rest / omega;
}

double osc_log_cos_full(double omega) {
    if (!(omega > 0)) throw std::domain_error("osc_log_cos_full: need omega > 0");
    return -M_PI / (2 * omega);
}

double log_sine_tail(double a) {
    if (a == 0) return 0;
    if (a < 0) return -log_sine_tail(-a);
    if (a <= 8) return si_over_s_integral(a) - M_PI / 2 * (kEulerGamma + std::log(a));
    return log_power_tables()(a, 1).imag();
}

double log_sine_full(double a) {
    if (a == 0) return 0;
    double v = -M_PI / 2 * (kEulerGamma + std::log(std::abs(a)));
    return a > 0 ? v : -v;
}

double log_cos_tail_sq(double a) {
    a = std::abs(a);
    if (a == 0) return 1;
    if (a >= 8) return log_power_tables()(a, 2).real();
    return log_power_rotated(a, 2).real();
}

double log_sine_tail_cube(double a) {
    if (a == 0) return 0;
    if (a < 0) return -log_sine_tail_cube(-a);
    if (a >= 8) return log_power_tables()(a, 3).imag();
    return log_power_rotated(a, 3).imag();
}

double log_cos_unit(double a) {
    if (a == 0) return -1;
    return -sine_integral(a) / a;
}

LineIntegral mellin_line_integral(const ContourSpec& contour,
                                  const std::function<cplx(cplx)>& integrand) {
    if (!std::isfinite(contour.c) || !(contour.height > 0) || contour.nodes < 16)
        throw std::invalid_argument("mellin_line_integral: bad contour");
    // integrate t over [-H, H]; double H while the last doubling still moves the value
    double density = contour.nodes / (2 * contour.height);
    auto segment = [&](double a, double b) {
        int panels = std::max(1, int(std::ceil(density * (b - a) / 16)));
        auto f = [&](double t) { return integrand(cplx(contour.c, t)); };
        return integrate_breaks(f, uniform_breaks(a, b, panels), 16);
    };
    double H = contour.height;
    cplx total = segment(-H, H);
    double tail = 0;
    for (int round = 0; round < contour.max_doublings; ++round) {
        cplx add = segment(H, 2 * H) + segment(-2 * H, -H);
        tail = std::abs(add) / (2 * M_PI);
        total += add;
        H *= 2;
        if (tail <= contour.tolerance) break;
    }
    if (tail > contour.tolerance)
        throw std::runtime_error("mellin_line_integral: truncation tail above tolerance");
    return {total / (2 * M_PI), tail};
}

}  // namespace weilab
