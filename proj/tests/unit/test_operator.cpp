#include <doctest.h>

#include <cmath>

#include "weilab/operator.hpp"

using namespace weilab;

namespace {
const double pi = 3.14159265358979323846;
const double series_trace = 0.01658664955;  // trace of V(h)T for ref_g from the lattice series

TestFunction ref_g() { return TestFunction({{-0.15, 0.15, 1.0}, {0.15, 0.15, -1.0}}); }

double max_abs_g(const TestFunction& g) {
    double m = 0;
    for (int i = 0; i <= 4000; ++i) m = std::max(m, std::abs(g.log_eval(-1 + i / 2000.0)));
    return m;
}

double rel_frob(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).norm() / b.norm(); }

Eigen::MatrixXd sub(const Eigen::MatrixXd& a, const std::vector<int>& idx) {
    Eigen::MatrixXd out(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) out(i, j) = a(idx[i], idx[j]);
    return out;
}

int nearest_basis(const LogGrid& g, double x) {
    int best = 0;
    for (int i = 0; i < g.size(); ++i)
        if (g.basis_side[i] == 0 && std::abs(std::log(g.basis_x(i) / x)) < std::abs(std::log(g.basis_x(best) / x)))
            best = i;
    return best;
}
}  // namespace

TEST_CASE("grid invariants") {
    auto G = make_log_grid(2.0, 100, 400);
    double ll = std::log(2.0);
    double m = ll / G->step;
    CHECK(std::abs(m - std::round(m)) < 1e-9);
    CHECK(G->size() == int(G->nodes.size()));  // two split nodes make up for the two missing ends
    for (size_t k = 0; k < G->nodes.size(); ++k)
        CHECK(std::abs(G->nodes[k] * G->nodes[G->nodes.size() - 1 - k] - 1) < 1e-12);
    CHECK((G->mass - G->mass.transpose()).norm() == 0);
    CHECK(G->mass.llt().info() == Eigen::Success);
    // the basis sums to 1 except on the two end cells, where it ramps linearly from 0
    double total = G->mass.sum();
    CHECK(std::abs(total - (std::log(G->x_max / G->x_min) - 4 * G->step / 3)) < 1e-10);
    double wsum = 0;
    for (double w : G->weights) wsum += w;
    CHECK(std::abs(wsum - std::log(G->x_max / G->x_min)) < 1e-10);

    auto N = make_log_grid(2.0, 100, 401, GridKind::Nystrom);
    double mh = ll / N->step - 0.5;
    CHECK(std::abs(mh - std::round(mh)) < 1e-9);
    CHECK(N->size() % 2 == 1);
    wsum = 0;
    for (double w : N->weights) wsum += w;
    CHECK(std::abs(wsum - std::log(N->x_max / N->x_min)) < 1e-10);

    CHECK_THROWS_AS(make_log_grid(1.0, 100, 400), std::invalid_argument);
    CHECK_THROWS_AS(make_log_grid(2.0, 1.5, 400), std::invalid_argument);
}

TEST_CASE("cut projections and the inversion") {
    for (GridKind kind : {GridKind::Galerkin, GridKind::Nystrom}) {
        auto G = make_log_grid(2.0, 30, 200, kind);
        auto S = build_S(G), P = build_P(G), J = build_J(G), I = identity_operator(G);
        CHECK((S * S).entries == S.entries);
        CHECK((P * P).entries == P.entries);
        CHECK((J * J).entries == I.entries);
        CHECK((J * S * J).entries == P.entries);
        // S + P covers everything, overlapping on 1/lambda < x < lambda
        Eigen::VectorXd d = (S + P).entries.diagonal();
        for (int i = 0; i < G->size(); ++i) {
            bool mid = G->support_lo(i) > -std::log(2.0) - 1e-12 && G->support_hi(i) < std::log(2.0) + 1e-12;
            CHECK(d(i) == (mid ? 2 : 1));
        }
    }
}

TEST_CASE("convolution operators: adjoints, symmetry, zero function, coverage") {
    auto G = make_log_grid(2.0, 20, 300);
    TestFunction g = ref_g();
    HFunction h(g);
    auto Vg = build_vg(g, G), Vs = build_vg_star(g, G), Vh = build_vh(h, G);
    Eigen::MatrixXd Gh = Vh.gram();
    CHECK((Gh - Gh.transpose()).norm() <= 1e-12 * Gh.norm());
    CHECK((Vs.gram() - Vg.gram().transpose()).norm() <= 1e-12 * Vg.gram().norm());
    CHECK(symmetric_spectrum(Vh).min >= -1e-8 * symmetric_spectrum(Vh).norm());

    HFunction hz(zero_function(0.6));
    CHECK(build_vh(hz, G).entries.norm() == 0);
    CHECK(build_vg(zero_function(0.6), G).entries.norm() == 0);

    auto tight = make_log_grid(2.0, 2.5, 100);  // does not reach lambda/mu
    CHECK_THROWS_AS(build_vh(h, tight), std::invalid_argument);
}

TEST_CASE("V(g)V(g*) = V(h) converges at least at second order on the interior") {
    TestFunction g = ref_g();
    HFunction h(g);
    std::vector<double> err;
    for (int n : {150, 300, 600, 1200}) {
        auto G = make_log_grid(2.0, 20, n);
        auto A = build_vg(g, G) * build_vg_star(g, G);
        auto B = build_vh(h, G);
        double margin = 2 * g.log_radius() + 2 * G->step, lx = std::log(G->x_max);
        std::vector<int> in;
        for (int i = 0; i < G->size(); ++i)
            if (std::abs(std::log(G->basis_x(i))) < lx - margin) in.push_back(i);
        err.push_back(rel_frob(sub(A.entries, in), sub(B.entries, in)));
    }
    for (size_t i = 1; i < err.size(); ++i) {
        double order = std::log2(err[i - 1] / err[i]);
        INFO("refinement " << i << " error " << err[i] << " observed order " << order);
        CHECK(order >= 1.8);
    }
}

TEST_CASE("cosine transform matrix: orthogonal involution and the Gaussian pair") {
    auto N = make_log_grid(2.0, 60, 300, GridKind::Nystrom);
    auto C = build_cosine_conjugated(N);
    int n = N->size();
    CHECK((C.entries - C.entries.transpose()).norm() <= 1e-12 * std::sqrt(double(n)));
    CHECK((C.entries * C.entries - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-9);
    CHECK((C.entries * Eigen::VectorXd::Zero(n)).norm() == 0);
    CHECK_THROWS_AS(build_cosine_conjugated(make_log_grid(2.0, 60, 300)), std::invalid_argument);

    // sqrt(x) e^{-a x^2} -> sqrt(x) sqrt(pi/a) e^{-pi^2 x^2/a}; wide grid so the slow sqrt(x)
    // decay toward 0 is not cut off
    auto W = make_log_grid(2.0, 1e6, 1200, GridKind::Nystrom);
    auto CW = build_cosine_conjugated(W);
    for (double a : {pi, 3.0, 10.0}) {
        Eigen::VectorXd f(W->size());
        for (int k = 0; k < W->size(); ++k) f(k) = std::sqrt(W->nodes[k]) * std::exp(-a * W->nodes[k] * W->nodes[k]);
        Eigen::VectorXd cf = CW.entries * f;
        double err = 0;
        for (int k = 0; k < W->size(); ++k) {
            double x = W->nodes[k];
            if (x < 0.05 || x > 3) continue;
            err = std::max(err, std::abs(cf(k) - std::sqrt(x * pi / a) * std::exp(-pi * pi * x * x / a)));
        }
        INFO("a = " << a);
        CHECK(err <= 1e-5);
    }
}

TEST_CASE("T is a positive contraction; with P = I it vanishes") {
    auto G = make_log_grid(2.0, 200, 300);
    auto T = build_T(G);
    Eigen::MatrixXd gt = T.gram();
    CHECK((gt - gt.transpose()).norm() <= 1e-10 * gt.norm());
    SymmetricSpectrum s = symmetric_spectrum(T);
    CHECK(s.min >= -1e-6 * s.norm());
    CHECK(s.max <= 1 + 1e-8);
    CHECK(s.max > 0.5);

    auto N = make_log_grid(2.0, 60, 301, GridKind::Nystrom);
    SymmetricSpectrum sn = symmetric_spectrum(build_T(N));
    CHECK(sn.min >= -1e-6 * sn.norm());
    auto C = build_cosine_conjugated(N), S = build_S(N);
    CHECK((S * (S - C * identity_operator(N) * C) * S).entries.norm() <= 1e-9);
}

TEST_CASE("spectrum of V(h)T: nonnegative, eigenvalue sum equals matrix trace") {
    auto G = make_log_grid(2.0, 200, 300);
    HFunction h(ref_g());
    Spectrum s = spectrum_vht(G, h);
    CHECK(std::abs(s.eigenvalue_sum - s.matrix_trace) <= 1e-10 * std::abs(s.matrix_trace));
    CHECK(s.min_real >= -1e-5 * s.spectral_radius);
    CHECK(s.max_abs_imag <= 1e-6 * s.spectral_radius);
    CHECK(std::abs(s.matrix_trace - series_trace) <= 1e-2 * series_trace);
    CHECK_THROWS_AS(spectrum_vht(make_log_grid(2.0, 60, 301, GridKind::Nystrom), h), std::invalid_argument);

    nlohmann::json j = to_json(s);
    CHECK(j["eigenvalues_real"].size() == s.eigenvalues.size());
    CHECK(spectrum_csv(s).rfind("index,real,imag\n", 0) == 0);
}

TEST_CASE("kernel of V(h)T: support, diagonal, and the matrix kernel") {
    HFunction h(ref_g());
    CHECK(kernel_vht(1.0, 0.4, h, 2.0) == 0);
    CHECK(kernel_diagonal(0.45, h, 2.0) == 0);
    for (double x : {0.6, 0.9, 1.7, 4.0})
        CHECK(std::abs(kernel_vht(x, x, h, 2.0, 1e-11) - kernel_diagonal(x, h, 2.0)) <= 1e-9);

    // Galerkin node kernel A M^{-1} against the nested quadrature, improving with the grid
    std::vector<double> err;
    for (int n : {300, 600}) {
        auto G = make_log_grid(2.0, 60, n);
        auto A = build_vh(h, G) * build_T(G);
        Eigen::MatrixXd K = G->mass.llt().solve(A.entries.transpose()).transpose();
        double e = 0, scale = 0;
        for (double x : {0.7, 1.0, 1.6})
            for (double y : {0.8, 1.2, 2.5}) {
                int i = nearest_basis(*G, x), j = nearest_basis(*G, y);
                double ref = kernel_vht(G->basis_x(i), G->basis_x(j), h, 2.0, 1e-11);
                e = std::max(e, std::abs(K(i, j) - ref));
                scale = std::max(scale, std::abs(ref));
            }
        err.push_back(e / scale);
    }
    INFO("kernel errors " << err[0] << " " << err[1]);
    CHECK(err[1] <= 1e-2);
    CHECK(err[0] >= 3 * err[1]);
}

TEST_CASE("diagonal-kernel trace") {
    HFunction h(ref_g());
    DiagonalTrace d = trace_diagonal(h, 2.0);
    CHECK(std::abs(d.value - series_trace) <= 1e-7 * series_trace);
    CHECK(d.error <= 1e-9);
    CHECK(d.x_cut > 10);
    HFunction hz(zero_function(0.6));
    CHECK(trace_diagonal(hz, 2.0).value == 0);
}

TEST_CASE("Fourier inversion through the cut") {
    TestFunction g = ref_g();
    double gmax = max_abs_g(g);
    Reproducing44 r = reproducing_check_44(1.0, 2.0, g);
    CHECK(r.y.size() == 10);
    CHECK(r.y[0] == 1.0);
    CHECK(r.max_residual <= 1e-4 * gmax);

    // z = 0.6: the cut 1/lambda = 0.5 lies inside the support of g(y/z)
    r = reproducing_check_44(0.6, 2.0, g);
    CHECK(r.max_residual <= 1e-4 * gmax);
    bool below = false, above = false;
    for (size_t i = 0; i < r.y.size(); ++i) {
        if (r.y[i] < 0.5 && g(r.y[i] / 0.6) != 0) below = true;
        if (r.y[i] > 0.5 && r.expected[i] != 0) above = true;
        if (r.y[i] < 0.5) CHECK(r.expected[i] == 0);
    }
    CHECK(below);
    CHECK(above);

    // support entirely below the cut
    r = reproducing_check_44(0.2, 2.0, g);
    CHECK(r.max_residual == 0);
}

TEST_CASE("decay of the cut Fourier integral") {
    TestFunction g = ref_g();
    DecayTable t = decay_bound_check(0.6, 2.0, g, {0.25, 0.5, 0.75});
    REQUIRE(t.raw_decade_sup.size() == 4);
    for (size_t d = 1; d < 4; ++d) CHECK(t.raw_decade_sup[d] <= t.raw_decade_sup[d - 1]);
    for (const DecayRow& row : t.rows) {
        INFO("c = " << row.c);
        CHECK(row.growth <= 50);
    }
    // a bump clear of the cut decays faster than any power
    DecayTable smooth = decay_bound_check(1.0, 2.0, g, {0.75});
    CHECK(smooth.raw_decade_sup[3] <= 1e-8 * smooth.raw_decade_sup[0]);
    CHECK_THROWS_AS(decay_bound_check(0.6, 2.0, g, {1.0}), std::invalid_argument);
}

TEST_CASE("commutator decomposition of V(h)T") {
    TestFunction g = ref_g();
    HFunction h(g);
    auto N = make_log_grid(2.0, 60, 301, GridKind::Nystrom);
    auto C = build_cosine_conjugated(N), S = build_S(N), J = build_J(N);
    auto Vg = build_vg(g, N), Vs = build_vg_star(g, N), Vh = build_vh(h, N);
    OperatorMatrix Ct = C;
    Ct.entries.transposeInPlace();
    auto T = build_T(N);
    OperatorMatrix rhs = Vg * commutator(S, Vs * S * Ct * J) * J * C * S - Vg * commutator(S, Vs) * S;
    // algebraically rhs = V(g)V(g*)T, using C C = 1 and J S J = P
    CHECK(rel_frob(rhs.entries, (Vg * Vs * T).entries) <= 1e-10);
    // what remains is the factorization error
    Eigen::MatrixXd res = (Vh * T).entries - rhs.entries;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd((Vg * Vs - Vh).entries);
    double envelope = svd.singularValues()(0) * T.entries.norm();
    CHECK(res.norm() <= envelope);
    CHECK(res.norm() > 0);
}

TEST_CASE("matrix export") {
    auto G = make_log_grid(2.0, 10, 40);
    std::string csv = matrix_csv(build_S(G));
    CHECK(csv.rfind("x,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == G->size() + 1);
}
