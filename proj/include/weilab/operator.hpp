#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "weilab/testfn.hpp"

// Operators on L^2(R_+, dx/x) for the archimedean-only case (mu > 1/2), discretized on a
// logarithmic grid that is symmetric under x -> 1/x.
namespace weilab {

enum class GridKind {
    // piecewise-linear hats in log x; the cuts of S and P sit on nodes, where the hat is split
    // into a left and a right half so S and P are exact projections
    Galerkin,
    // point values with rectangle weights; the cuts sit at cell midpoints
    Nystrom,
};

struct LogGrid {
    GridKind kind = GridKind::Galerkin;
    double lambda = 2;
    double step = 0;  // spacing in log x
    double x_min = 0, x_max = 0;
    std::vector<double> nodes;    // geometric, strictly increasing
    std::vector<double> weights;  // d^x x weights, summing to log(x_max/x_min)

    // Unknowns. Nystrom: one per node. Galerkin: one per interior node, two (left and right
    // half hats) at the nodes x = 1/lambda and x = lambda; nothing at the two end nodes.
    std::vector<int> basis_node;
    std::vector<int> basis_side;  // -1 left half, 0 full, +1 right half
    Eigen::MatrixXd mass;         // <phi_i, phi_j> (diagonal of weights for Nystrom)

    int size() const { return int(basis_node.size()); }
    double basis_x(int i) const { return nodes[basis_node[i]]; }
    double log_node(int k) const { return (k - (int(nodes.size()) - 1) / 2) * step; }
    // support of basis function i in log x
    double support_lo(int i) const;
    double support_hi(int i) const;
};

// Grid on roughly [1/x_max, x_max] with about n nodes; the spacing divides log(lambda)
// (Galerkin) or log(lambda) sits half a step off a node (Nystrom).
std::shared_ptr<const LogGrid> make_log_grid(double lambda, double x_max, int n,
                                             GridKind kind = GridKind::Galerkin);

// A discretized operator acting on coefficient vectors of grid->basis. For a self-adjoint
// operator, gram() = mass * entries is symmetric.
struct OperatorMatrix {
    std::shared_ptr<const LogGrid> grid;
    Eigen::MatrixXd entries;
    std::string label;

    Eigen::MatrixXd gram() const { return grid->mass * entries; }
    OperatorMatrix operator*(const OperatorMatrix& o) const;
    OperatorMatrix operator+(const OperatorMatrix& o) const;
    OperatorMatrix operator-(const OperatorMatrix& o) const;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// V(k)F(x) = int k(x/l) sqrt(x/l) F(l) d^x l for k = g, g* (g*(x) = g(1/x)/x) or h.
// Throws when the grid does not reach mu/lambda and lambda/mu.
OperatorMatrix build_vg(const TestFunction& g, std::shared_ptr<const LogGrid> grid);
OperatorMatrix build_vg_star(const TestFunction& g, std::shared_ptr<const LogGrid> grid);
OperatorMatrix build_vh(const HFunction& h, std::shared_ptr<const LogGrid> grid);

OperatorMatrix build_S(std::shared_ptr<const LogGrid> grid);  // 1 on x > 1/lambda
OperatorMatrix build_P(std::shared_ptr<const LogGrid> grid);  // 1 on x < lambda
OperatorMatrix build_J(std::shared_ptr<const LogGrid> grid);  // F(x) -> F(1/x)
OperatorMatrix identity_operator(std::shared_ptr<const LogGrid> grid);

// CF(x) = 2 sqrt(x) int F(t) t^{-1/2} cos(2 pi x t) dt, Nystrom grids only. In log x this is
// the reflection composed with a unimodular Mellin multiplier; the multiplier is applied
// exactly on the periodic grid, so the matrix is orthogonal and an involution to rounding.
OperatorMatrix build_cosine_conjugated(std::shared_ptr<const LogGrid> grid);

// Z = C P C. Galerkin: exact Galerkin entries 4 int_0^lambda a_i(u) a_j(u) du on the S
// block, a_i the cosine transform of phi_i / sqrt(x). Nystrom: product of the matrices.
OperatorMatrix build_Z(std::shared_ptr<const LogGrid> grid);

// T = S (S - C^t P C) S.
OperatorMatrix build_T(std::shared_ptr<const LogGrid> grid);
OperatorMatrix build_T(std::shared_ptr<const LogGrid> grid, const OperatorMatrix& Z);

// Extreme eigenvalues of a self-adjoint operator matrix (generalized problem gram x = e mass x).
struct SymmetricSpectrum {
    double min = 0, max = 0;
    double norm() const { return std::max(std::abs(min), std::abs(max)); }
};
SymmetricSpectrum symmetric_spectrum(const OperatorMatrix& a);

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;  // ascending real part
    double min_real = 0, max_real = 0, max_abs_imag = 0, spectral_radius = 0;
    double matrix_trace = 0;
    double eigenvalue_sum = 0;
};

Spectrum spectrum(const OperatorMatrix& a);
// V(h)T on a Galerkin grid.
Spectrum spectrum_vht(std::shared_ptr<const LogGrid> grid, const HFunction& h);

// Kernel of V(h)T with respect to d^x y,
// k(x,y) = S(y)[sqrt(x/y) h(x/y) - sqrt(xy) I(x,y)],
// I(x,y) = 4 int_0^lambda cos(2 pi u y) int_{1/lambda}^inf x^{-1} h(l/x) cos(2 pi l u) dl du,
// by nested quadrature.
double kernel_vht(double x, double y, const HFunction& h, double lambda, double rel_tol = 1e-9);

// k(x,x) = S(x)[h(1) - (1/pi) int_{s > 1/(lambda x)} h(s) (sin(2 pi lambda x (s-1))/(s-1)
//                                                   + sin(2 pi lambda x (s+1))/(s+1)) ds]
double kernel_diagonal(double x, const HFunction& h, double lambda);

struct DiagonalTrace {
    double value = 0;
    double error = 0;  // quadrature change under refinement plus the dropped tail
    double x_cut = 0;  // integration stopped here
};
// int_{x > 1/lambda} k(x,x) d^x x
DiagonalTrace trace_diagonal(const HFunction& h, double lambda, double rel_tol = 1e-9);

// Fourier inversion through the cut: int Psi(-uy) du int z^{-1} g(l/z) S(l) Psi(l u) dl against
// z^{-1} g(y/z) S(y), at `samples` points y spread over the support (avoiding y = 1/lambda).
struct Reproducing44 {
    std::vector<double> y, reproduced, expected;
    double max_residual = 0;
};
Reproducing44 reproducing_check_44(double z, double lambda, const TestFunction& g, int samples = 10);

// |int g(l) S(l z) Psi(l w) dl| over w = z/y in [w_lo, w_lo 10^4], scaled by w^c.
struct DecayRow {
    double c = 0;
    std::vector<double> decade_sup;  // sup of |I| w^c on each decade
    double sup = 0;
    double growth = 0;       // max over decades / first decade
    double max_over_min = 0;
};
struct DecayTable {
    double z = 1, w_lo = 1;
    std::vector<double> raw_decade_sup;  // sup of |I| on each decade
    std::vector<DecayRow> rows;
};
double decay_integral(const TestFunction& g, double z, double w, double lambda);
DecayTable decay_bound_check(double z, double lambda, const TestFunction& g,
                             const std::vector<double>& c_list, double w_lo = 1,
                             int samples_per_decade = 60);

std::string matrix_csv(const OperatorMatrix& a);
std::string spectrum_csv(const Spectrum& s);
nlohmann::json to_json(const Spectrum& s, bool with_eigenvalues = true);

}  // namespace weilab
