#include "weilab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weilab/parallel.hpp"
#include "weilab/quadrature.hpp"
#include "weilab/special.hpp"

namespace weilab {

namespace {

using Mat = Eigen::MatrixXd;

void require_same_grid(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.grid != b.grid) throw std::invalid_argument("operator matrices live on different grids");
}

// Basis functions touching the cell between nodes c and c+1: the one rising from node c
// (rpart) and the one falling into node c+1 (lpart); -1 where there is none.
struct CellParts {
    std::vector<int> rpart, lpart;
};

CellParts cell_parts(const LogGrid& g) {
    int nn = int(g.nodes.size());
    CellParts p{std::vector<int>(nn, -1), std::vector<int>(nn, -1)};
    for (int i = 0; i < g.size(); ++i) {
        int k = g.basis_node[i], side = g.basis_side[i];
        if (side >= 0) p.rpart[k] = i;
        if (side <= 0) p.lpart[k] = i;
    }
    return p;
}

Mat solve_mass(const LogGrid& g, const Mat& rhs) {
    if (g.kind == GridKind::Nystrom) return rhs / g.step;
    return g.mass.llt().solve(rhs);
}

OperatorMatrix make_op(std::shared_ptr<const LogGrid> grid, Mat entries, std::string label) {
    OperatorMatrix o;
    o.grid = std::move(grid);
    o.entries = std::move(entries);
    o.label = std::move(label);
    return o;
}

// Matrix of F -> int K(log x - log l) F(l) d^x l, where K vanishes for |.| >= radius.
OperatorMatrix log_convolution(std::shared_ptr<const LogGrid> grid, const std::function<double(double)>& K,
                               double radius, const std::string& label) {
    const LogGrid& g = *grid;
    int n = g.size();
    double d = g.step;
    if (g.kind == GridKind::Nystrom) {
        Mat A = Mat::Zero(n, n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double s = (k - l) * d;
                if (std::abs(s) < radius) A(k, l) = K(s) * g.weights[l];
            }
        return make_op(grid, std::move(A), label);
    }
    CellParts parts = cell_parts(g);
    const GaussRule& gl = gauss_legendre(10);
    int q = int(gl.x.size());
    int cells = int(g.nodes.size()) - 1;
    Mat G = Mat::Zero(n, n);
    std::vector<double> th(q), wq(q);
    for (int i = 0; i < q; ++i) th[i] = 0.5 * (1 + gl.x[i]), wq[i] = 0.5 * gl.w[i] * d;
    for (int c1 = 0; c1 < cells; ++c1) {
        int a[2] = {parts.rpart[c1], parts.lpart[c1 + 1]};
        for (int c2 = 0; c2 < cells; ++c2) {
            if (std::abs(c1 - c2) * d >= radius + d) continue;
            int b[2] = {parts.rpart[c2], parts.lpart[c2 + 1]};
            double v[2][2] = {};
            for (int p = 0; p < q; ++p)
                for (int r = 0; r < q; ++r) {
                    double f = K((c1 - c2 + th[p] - th[r]) * d) * wq[p] * wq[r];
                    if (f == 0) continue;
                    v[0][0] += (1 - th[p]) * (1 - th[r]) * f;
                    v[0][1] += (1 - th[p]) * th[r] * f;
                    v[1][0] += th[p] * (1 - th[r]) * f;
                    v[1][1] += th[p] * th[r] * f;
                }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (a[i] >= 0 && b[j] >= 0) G(a[i], b[j]) += v[i][j];
        }
    }
    return make_op(grid, solve_mass(g, G), label);
}

void check_coverage(const LogGrid& g, double mu) {
    double need = std::log(g.lambda) - std::log(mu);
    if (std::log(g.x_max) < need - 1e-12 || -std::log(g.x_min) < need - 1e-12)
        throw std::invalid_argument("grid does not cover [mu/lambda, lambda/mu]");
}

}  // namespace

// ---------------------------------------------------------------- grid

double LogGrid::support_lo(int i) const {
    double s = log_node(basis_node[i]);
    if (kind == GridKind::Nystrom) return s - 0.5 * step;
    return basis_side[i] > 0 ? s : s - step;
}

double LogGrid::support_hi(int i) const {
    double s = log_node(basis_node[i]);
    if (kind == GridKind::Nystrom) return s + 0.5 * step;
    return basis_side[i] < 0 ? s : s + step;
}

std::shared_ptr<const LogGrid> make_log_grid(double lambda, double x_max, int n, GridKind kind) {
    if (!(lambda > 1)) throw std::invalid_argument("make_log_grid: lambda must exceed 1");
    if (!(x_max > lambda)) throw std::invalid_argument("make_log_grid: x_max must exceed lambda");
    if (n < 8) throw std::invalid_argument("make_log_grid: need at least 8 nodes");
    auto g = std::make_shared<LogGrid>();
    g->kind = kind;
    g->lambda = lambda;
    double ll = std::log(lambda), lx = std::log(x_max);
    int K;
    if (kind == GridKind::Galerkin) {
        int m = std::max(1, int(std::lround(n * ll / (2 * lx))));
        g->step = ll / m;
        K = std::max(m + 2, int(std::lround(lx / g->step)));
        g->x_max = std::exp(K * g->step);
    } else {
        int m = std::max(1, int(std::lround(n * ll / (2 * lx) - 0.5)));
        g->step = ll / (m + 0.5);
        K = std::max(m + 2, int(std::lround(lx / g->step - 0.5)));
        g->x_max = std::exp((K + 0.5) * g->step);
    }
    g->x_min = 1 / g->x_max;
    int nn = 2 * K + 1;
    g->nodes.resize(nn);
    g->weights.assign(nn, g->step);
    for (int k = 0; k < nn; ++k) g->nodes[k] = std::exp((k - K) * g->step);
    if (kind == GridKind::Nystrom) {
        for (int k = 0; k < nn; ++k) g->basis_node.push_back(k), g->basis_side.push_back(0);
        g->mass = Mat::Identity(nn, nn) * g->step;
        return g;
    }
    g->weights.front() = g->weights.back() = 0.5 * g->step;
    int m = int(std::lround(ll / g->step));
    for (int k = 1; k + 1 < nn; ++k) {
        if (std::abs(k - K) == m) {
            g->basis_node.push_back(k), g->basis_side.push_back(-1);
            g->basis_node.push_back(k), g->basis_side.push_back(+1);
        } else {
            g->basis_node.push_back(k), g->basis_side.push_back(0);
        }
    }
    int nb = g->size();
    g->mass = Mat::Zero(nb, nb);
    CellParts parts = cell_parts(*g);
    double d = g->step;
    for (int c = 0; c + 1 < nn; ++c) {
        int a = parts.rpart[c], b = parts.lpart[c + 1];
        if (a >= 0) g->mass(a, a) += d / 3;
        if (b >= 0) g->mass(b, b) += d / 3;
        if (a >= 0 && b >= 0) g->mass(a, b) += d / 6, g->mass(b, a) += d / 6;
    }
    return g;
}

// ---------------------------------------------------------------- algebra

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
    require_same_grid(*this, o);
    return make_op(grid, entries * o.entries, label + "*" + o.label);
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
    require_same_grid(*this, o);
    return make_op(grid, entries + o.entries, label + "+" + o.label);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
    require_same_grid(*this, o);
    return make_op(grid, entries - o.entries, label + "-" + o.label);
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix c = a * b - b * a;
    c.label = "[" + a.label + "," + b.label + "]";
    return c;
}

// ---------------------------------------------------------------- building blocks

OperatorMatrix build_vg(const TestFunction& g, std::shared_ptr<const LogGrid> grid) {
    check_coverage(*grid, g.mu());
    auto K = [&](double s) { return g.log_eval(s) * std::exp(0.5 * s); };
    return log_convolution(grid, K, g.log_radius(), "V(g)");
}

OperatorMatrix build_vg_star(const TestFunction& g, std::shared_ptr<const LogGrid> grid) {
    check_coverage(*grid, g.mu());
    // g*(x) sqrt(x) = g(1/x) x^{-1/2}
    auto K = [&](double s) { return g.log_eval(-s) * std::exp(-0.5 * s); };
    return log_convolution(grid, K, g.log_radius(), "V(g*)");
}

OperatorMatrix build_vh(const HFunction& h, std::shared_ptr<const LogGrid> grid) {
    check_coverage(*grid, h.mu());
    auto K = [&](double s) { return h.log_eval(s) * std::exp(0.5 * s); };
    return log_convolution(grid, K, -std::log(h.mu()), "V(h)");
}

OperatorMatrix identity_operator(std::shared_ptr<const LogGrid> grid) {
    int n = grid->size();
    return make_op(grid, Mat::Identity(n, n), "I");
}

OperatorMatrix build_S(std::shared_ptr<const LogGrid> grid) {
    int n = grid->size();
    double cut = -std::log(grid->lambda);
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (grid->support_lo(i) > cut - 1e-9 * grid->step) A(i, i) = 1;
    return make_op(grid, std::move(A), "S");
}

OperatorMatrix build_P(std::shared_ptr<const LogGrid> grid) {
    int n = grid->size();
    double cut = std::log(grid->lambda);
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (grid->support_hi(i) < cut + 1e-9 * grid->step) A(i, i) = 1;
    return make_op(grid, std::move(A), "P");
}

OperatorMatrix build_J(std::shared_ptr<const LogGrid> grid) {
    const LogGrid& g = *grid;
    int n = g.size(), nn = int(g.nodes.size());
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int k = nn - 1 - g.basis_node[i], side = -g.basis_side[i];
        for (int j = 0; j < n; ++j)
            if (g.basis_node[j] == k && g.basis_side[j] == side) A(j, i) = 1;
    }
    return make_op(grid, std::move(A), "J");
}

OperatorMatrix build_cosine_conjugated(std::shared_ptr<const LogGrid> grid) {
    const LogGrid& g = *grid;
    if (g.kind != GridKind::Nystrom)
        throw std::invalid_argument("build_cosine_conjugated: needs a Nystrom grid");
    int N = g.size(), K = (N - 1) / 2;
    double d = g.step;
    // CF(e^s) = int k(s + s') F(e^{s'}) ds', k(r) = 2 e^{r/2} cos(2 pi e^r), whose Fourier
    // transform is 2 (2 pi)^{i tau - 1/2} Gamma(1/2 - i tau) cos(pi (1/2 - i tau)/2).
    std::vector<cplx> khat(N);
    for (int j = 0; j < N; ++j) {
        int jj = j <= K ? j : j - N;
        double tau = 2 * M_PI * jj / (N * d);
        khat[j] = 2.0 * std::exp(cplx(-0.5, tau) * std::log(2 * M_PI)) * cosine_moment(cplx(0.5, -tau));
    }
    std::vector<double> kd(N);
    for (int r = 0; r < N; ++r) {
        cplx acc = 0;
        for (int j = 0; j < N; ++j) acc += khat[j] * std::polar(1.0, 2 * M_PI * double((long long)j * r % N) / N);
        kd[r] = acc.real() / (N * d);
    }
    Mat C(N, N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) C(k, l) = d * kd[((k + l - 2 * K) % N + N) % N];
    return make_op(grid, std::move(C), "C");
}

OperatorMatrix build_Z(std::shared_ptr<const LogGrid> grid) {
    const LogGrid& g = *grid;
    if (g.kind == GridKind::Nystrom) {
        OperatorMatrix C = build_cosine_conjugated(grid);
        OperatorMatrix Z = C * build_P(grid) * C;
        Z.label = "Z";
        return Z;
    }
    double lam = g.lambda, d = g.step, X = g.x_max;
    int n = g.size(), nn = int(g.nodes.size());
    CellParts parts = cell_parts(g);
    double cut = -std::log(lam);
    // nodes in x over every cell of the S region, carrying the two hat values times the
    // quadrature weight of int phi(x) x^{-1/2} cos(2 pi x u) dx
    struct XNode {
        int a, b;
        double ca, cb, x;
    };
    std::vector<XNode> xs;
    for (int c = 0; c + 1 < nn; ++c) {
        if (g.log_node(c) < cut - 1e-9 * d) continue;
        double xa = g.nodes[c], xb = g.nodes[c + 1];
        int q = 12 + int(std::ceil(6 * lam * (xb - xa)));
        const GaussRule& gl = gauss_legendre(q);
        for (int i = 0; i < q; ++i) {
            double th = 0.5 * (1 + gl.x[i]), s = g.log_node(c) + th * d;
            double w = 0.5 * gl.w[i] * d * std::exp(0.5 * s);
            xs.push_back({parts.rpart[c], parts.lpart[c + 1], w * (1 - th), w * th, std::exp(s)});
        }
    }
    // u in [0, lambda]: Gauss panels short enough for the fastest product a_i a_j
    const GaussRule& gu = gauss_legendre(16);
    int P = int(std::ceil(lam * X / 1.5));
    double hu = lam / P;
    const int chunk = 128;
    Mat Z = Mat::Zero(n, n);
    for (int p0 = 0; p0 < P; p0 += chunk) {
        int pc = std::min(chunk, P - p0), cols = 16 * pc;
        Mat A = Mat::Zero(n, cols);
        for (const XNode& xn : xs) {
            cplx step = std::polar(1.0, 2 * M_PI * xn.x * hu);
            for (int q = 0; q < 16; ++q) {
                cplx z = std::polar(1.0, 2 * M_PI * xn.x * (p0 + 0.5 * (1 + gu.x[q])) * hu);
                for (int p = 0; p < pc; ++p) {
                    double c = z.real();
                    if (xn.a >= 0) A(xn.a, 16 * p + q) += xn.ca * c;
                    if (xn.b >= 0) A(xn.b, 16 * p + q) += xn.cb * c;
                    z *= step;
                }
            }
        }
        Eigen::VectorXd w(cols);
        for (int p = 0; p < pc; ++p)
            for (int q = 0; q < 16; ++q) w(16 * p + q) = 2 * gu.w[q] * hu;  // 4 * (hu/2) * w_q
        Z.noalias() += A * w.asDiagonal() * A.transpose();
    }
    return make_op(grid, solve_mass(g, Z), "Z");
}

OperatorMatrix build_T(std::shared_ptr<const LogGrid> grid, const OperatorMatrix& Z) {
    OperatorMatrix S = build_S(grid);
    OperatorMatrix T = S * (S - Z) * S;
    T.label = "T";
    return T;
}

OperatorMatrix build_T(std::shared_ptr<const LogGrid> grid) { return build_T(grid, build_Z(grid)); }

// ---------------------------------------------------------------- spectra

SymmetricSpectrum symmetric_spectrum(const OperatorMatrix& a) {
    Mat G = a.gram();
    G = 0.5 * (G + G.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(G, a.grid->mass, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("symmetric_spectrum: eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvalues()(G.rows() - 1)};
}

Spectrum spectrum(const OperatorMatrix& a) {
    Eigen::EigenSolver<Mat> es(a.entries, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
    Spectrum s;
    for (int i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
    std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(),
                     [](cplx x, cplx y) { return x.real() < y.real(); });
    s.min_real = s.eigenvalues.front().real();
    s.max_real = s.eigenvalues.back().real();
    std::vector<double> re;
    for (cplx e : s.eigenvalues) {
        s.max_abs_imag = std::max(s.max_abs_imag, std::abs(e.imag()));
        s.spectral_radius = std::max(s.spectral_radius, std::abs(e));
        re.push_back(e.real());
    }
    s.eigenvalue_sum = pairwise_sum(re);
    s.matrix_trace = a.entries.trace();
    return s;
}

Spectrum spectrum_vht(std::shared_ptr<const LogGrid> grid, const HFunction& h) {
    if (grid->kind != GridKind::Galerkin) throw std::invalid_argument("spectrum_vht: needs a Galerkin grid");
    return spectrum(build_vh(h, grid) * build_T(grid));
}

// ---------------------------------------------------------------- kernels

double kernel_vht(double x, double y, const HFunction& h, double lambda, double rel_tol) {
    if (!(x > 0 && y > 0)) throw std::invalid_argument("kernel_vht: need x, y > 0");
    if (y <= 1 / lambda || h.source().is_zero()) return 0;
    double mu = h.mu(), lo = std::max(mu, 1 / (lambda * x)), hi = 1 / mu;
    double scale = h.max_abs();
    double first = std::sqrt(x / y) * h(x / y);
    double I = 0;
    if (lo < hi) {
        // inner: int_lo^hi h(s) cos(2 pi s x u) ds  (s = l/x)
        auto inner = [&](double u) {
            auto f = [&](double s) { return h(s) * std::cos(2 * M_PI * s * x * u); };
            int panels = 8 + int(std::ceil(x * u * (hi - lo)));
            return integrate_doubling(f, uniform_breaks(lo, hi, panels), rel_tol, 1e-3 * rel_tol * scale).value;
        };
        auto outer = [&](double u) { return std::cos(2 * M_PI * u * y) * inner(u); };
        int panels = 8 + int(std::ceil(lambda * (y + x * hi)));
        I = 4 * integrate_doubling(outer, uniform_breaks(0, lambda, panels), rel_tol, 1e-3 * rel_tol * scale).value;
    }
    return first - std::sqrt(x * y) * I;
}

double kernel_diagonal(double x, const HFunction& h, double lambda) {
    if (!(x > 0)) throw std::invalid_argument("kernel_diagonal: need x > 0");
    if (x <= 1 / lambda || h.source().is_zero()) return 0;
    double mu = h.mu(), lo = std::max(mu, 1 / (lambda * x)), hi = 1 / mu;
    double N = 2 * M_PI * lambda * x;
    auto f = [&](double s) {
        double w = s - 1, t = N * w;
        double sinc = std::abs(t) < 1e-8 ? N : std::sin(t) / w;
        return h(s) * (sinc + std::sin(N * (s + 1)) / (s + 1));
    };
    std::vector<double> br;
    int panels = 64 + int(std::ceil(N * (hi - lo) / (2 * M_PI)));
    for (double b : uniform_breaks(lo, hi, panels)) br.push_back(b);
    if (lo < 1 && 1 < hi) br.push_back(1.0), std::sort(br.begin(), br.end());
    return h(1.0) - integrate_breaks(f, br, 20) / M_PI;
}

DiagonalTrace trace_diagonal(const HFunction& h, double lambda, double rel_tol) {
    DiagonalTrace out;
    if (h.source().is_zero()) return out;
    double mu = h.mu();
    // integrate in t = log x, in chunks, until the integrand has died out
    auto f = [&](double t) { return kernel_diagonal(std::exp(t), h, lambda); };
    double t = -std::log(lambda), kink = -std::log(lambda * mu), width = 0.25;
    int quiet = 0;
    double total = 0, err = 0, last = 0;
    while (quiet < 3 && t < std::log(1e4)) {
        double t1 = t + width;
        if (t < kink && kink < t1) t1 = kink;
        double cycles = lambda * (1 / mu - 1) * (std::exp(t1) - std::exp(t));
        int panels = 2 + int(std::ceil(2 * cycles));
        QuadResult r = integrate_doubling(f, uniform_breaks(t, t1, panels), rel_tol, 1e-3 * rel_tol * h.max_abs());
        total += r.value;
        err += r.error;
        last = r.value;
        quiet = std::abs(r.value) < rel_tol * std::abs(total) ? quiet + 1 : 0;
        t = t1;
    }
    out.value = total;
    out.error = err + std::abs(last);
    out.x_cut = std::exp(t);
    return out;
}

// ---------------------------------------------------------------- Fourier inversion through the cut

Reproducing44 reproducing_check_44(double z, double lambda, const TestFunction& g, int samples) {
    if (!(z > 0)) throw std::invalid_argument("reproducing_check_44: need z > 0");
    if (!(lambda > 1)) throw std::invalid_argument("reproducing_check_44: need lambda > 1");
    if (samples < 1) throw std::invalid_argument("reproducing_check_44: need samples >= 1");
    Reproducing44 out;
    double L = g.log_radius();
    double cut = 1 / lambda;
    // sample points: y = z, then a spread over and slightly beyond the support of g(y/z)
    out.y.push_back(z);
    for (int k = 1; k < samples; ++k) {
        double y = z * std::exp(L * (-1.15 + 2.3 * (k - 0.3) / (samples - 1)));
        if (std::abs(y - cut) < 0.02 * cut) y *= 1.05;
        out.y.push_back(y);
    }
    for (double y : out.y) out.expected.push_back(y > cut ? g(y / z) / z : 0.0);

    double lo = std::max(cut, z * std::exp(-L)), hi = z * std::exp(L);
    if (!(lo < hi) || g.is_zero()) {
        out.reproduced.assign(out.y.size(), 0.0);
        for (size_t i = 0; i < out.y.size(); ++i)
            out.max_residual = std::max(out.max_residual, std::abs(out.expected[i]));
        return out;
    }
    // value and derivative of f(l) = g(l/z)/z at the cut (nonzero only when the cut is inside)
    double f0 = 0, f1 = 0;
    if (lo == cut) {
        double t = std::log(cut / z);
        f0 = g.log_eval(t, 0) / z;
        f1 = g.log_eval(t, 1) / (z * cut);  // d/dl g(l/z)/z = G'(log(l/z)) / (z l)
    }
    // F(u) = 2 int_lo^hi f(l) cos(2 pi l u) dl on fixed outer nodes
    double U = 200;
    double ymax = *std::max_element(out.y.begin(), out.y.end());
    int opanels = int(std::ceil(2 * (hi + ymax) * U));
    const GaussRule& gl = gauss_legendre(20);
    std::vector<double> un, uw, Fu;
    for (int p = 0; p < opanels; ++p) {
        double a = U * p / opanels, b = U * (p + 1) / opanels;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double u = 0.5 * (a + b) + 0.5 * (b - a) * gl.x[i];
            un.push_back(u);
            uw.push_back(0.5 * (b - a) * gl.w[i]);
            auto fin = [&](double l) { return g(l / z) / z * std::cos(2 * M_PI * l * u); };
            int ip = 16 + int(std::ceil(2 * (hi - lo) * u));
            Fu.push_back(2 * integrate_breaks(fin, uniform_breaks(lo, hi, ip), 20));
        }
    }
    for (size_t iy = 0; iy < out.y.size(); ++iy) {
        double y = out.y[iy];
        std::vector<double> terms(un.size());
        for (size_t i = 0; i < un.size(); ++i) terms[i] = 2 * uw[i] * Fu[i] * std::cos(2 * M_PI * un[i] * y);
        double v = pairwise_sum(terms);
        // tail u > U of F ~ -f0 sin(2 pi lo u)/(pi u) - f1 cos(2 pi lo u)/(2 pi^2 u^2)
        if (f0 != 0 || f1 != 0) {
            auto sin_tail = [&](double k) {  // int_U^inf sin(k u)/u du
                if (k == 0) return 0.0;
                double s = k > 0 ? 1 : -1;
                return s * (M_PI / 2 - sine_integral(std::abs(k) * U));
            };
            auto cos_tail2 = [&](double k) {  // int_U^inf cos(k u)/u^2 du
                k = std::abs(k);
                double si = k == 0 ? 0 : (M_PI / 2 - sine_integral(k * U));
                return std::cos(k * U) / U - k * si;
            };
            double kp = 2 * M_PI * (lo + y), km = 2 * M_PI * (lo - y);
            v += -(f0 / M_PI) * (sin_tail(kp) + sin_tail(km));
            v += -(f1 / (2 * M_PI * M_PI)) * (cos_tail2(kp) + cos_tail2(km));
        }
        out.reproduced.push_back(v);
        out.max_residual = std::max(out.max_residual, std::abs(v - out.expected[iy]));
    }
    return out;
}

// ---------------------------------------------------------------- decay

double decay_integral(const TestFunction& g, double z, double w, double lambda) {
    double L = g.log_radius();
    double lo = std::max(std::exp(-L), 1 / (lambda * z)), hi = std::exp(L);
    if (!(lo < hi) || g.is_zero()) return 0;
    auto f = [&](double l) { return g(l) * std::cos(2 * M_PI * l * w); };
    int panels = 16 + int(std::ceil(2 * w * (hi - lo)));
    return 2 * integrate_breaks(f, uniform_breaks(lo, hi, panels), 20);
}

DecayTable decay_bound_check(double z, double lambda, const TestFunction& g, const std::vector<double>& c_list,
                             double w_lo, int samples_per_decade) {
    for (double c : c_list)
        if (!(c > 0 && c < 1)) throw std::invalid_argument("decay_bound_check: c must lie in (0,1)");
    if (!(w_lo > 0) || samples_per_decade < 2) throw std::invalid_argument("decay_bound_check: bad range");
    DecayTable t;
    t.z = z;
    t.w_lo = w_lo;
    const int decades = 4;
    std::vector<double> ws, vals;
    for (int k = 0; k < decades * samples_per_decade; ++k) {
        // slightly irregular spacing so the samples do not lock onto the oscillation
        double e = (k + 0.5 + 0.3 * std::sin(1.7 * k)) / samples_per_decade;
        double w = w_lo * std::pow(10.0, e);
        ws.push_back(w);
        vals.push_back(std::abs(decay_integral(g, z, w, lambda)));
    }
    t.raw_decade_sup.assign(decades, 0.0);
    for (size_t k = 0; k < ws.size(); ++k) {
        int dcd = std::min(decades - 1, int(k / samples_per_decade));
        t.raw_decade_sup[dcd] = std::max(t.raw_decade_sup[dcd], vals[k]);
    }
    for (double c : c_list) {
        DecayRow r;
        r.c = c;
        r.decade_sup.assign(decades, 0.0);
        for (size_t k = 0; k < ws.size(); ++k) {
            int dcd = std::min(decades - 1, int(k / samples_per_decade));
            r.decade_sup[dcd] = std::max(r.decade_sup[dcd], vals[k] * std::pow(ws[k], c));
        }
        double mx = *std::max_element(r.decade_sup.begin(), r.decade_sup.end());
        double mn = *std::min_element(r.decade_sup.begin(), r.decade_sup.end());
        r.sup = mx;
        r.growth = r.decade_sup[0] > 0 ? mx / r.decade_sup[0] : 0;
        r.max_over_min = mn > 0 ? mx / mn : 0;
        t.rows.push_back(r);
    }
    return t;
}

// ---------------------------------------------------------------- export

std::string matrix_csv(const OperatorMatrix& a) {
    std::ostringstream os;
    os.precision(17);
    os << "x";
    for (int j = 0; j < a.grid->size(); ++j) os << ',' << a.grid->basis_x(j);
    os << '\n';
    for (int i = 0; i < a.entries.rows(); ++i) {
        os << a.grid->basis_x(i);
        for (int j = 0; j < a.entries.cols(); ++j) os << ',' << a.entries(i, j);
        os << '\n';
    }
    return os.str();
}

std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream os;
    os.precision(17);
    os << "index,real,imag\n";
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << i << ',' << s.eigenvalues[i].real() << ',' << s.eigenvalues[i].imag() << '\n';
    return os.str();
}

nlohmann::json to_json(const Spectrum& s, bool with_eigenvalues) {
    nlohmann::json j = {{"min_real", s.min_real},
                        {"max_real", s.max_real},
                        {"max_abs_imag", s.max_abs_imag},
                        {"spectral_radius", s.spectral_radius},
                        {"matrix_trace", s.matrix_trace},
                        {"eigenvalue_sum", s.eigenvalue_sum},
                        {"size", s.eigenvalues.size()}};
    if (with_eigenvalues) {
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (auto e : s.eigenvalues) re.push_back(e.real()), im.push_back(e.imag());
        j["eigenvalues_real"] = re;
        j["eigenvalues_imag"] = im;
    }
    return j;
}

}  // namespace weilab
