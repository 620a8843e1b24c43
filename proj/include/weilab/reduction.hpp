#pragma once

// Frequency-pair kernels shared by the weil and trace modules. Every adelic integral in
// those modules reduces, after the varpi-weighted lattice expansion, to sums of these
// one-dimensional integrals evaluated at w1 = 2 pi beta, w2 = 2 pi gamma.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "weilab/places.hpp"
#include "weilab/testfn.hpp"

namespace weilab {

struct QuadConfig {
    double rel_tol = 1e-10;      // panel-doubling tolerance per 1D integral
    double abs_tol = 1e-13;      // absolute floor, multiplied by max|h|
    double direct_limit = 100.5;  // w2 above this uses the asymptotic / windowed branches
    double window = 1000;        // |argument| window kept exact in the unit-interval kernel
    double panels_per_period = 1;
    int workers = 0;
};

struct KernelValue {
    double value = 0;
    double error = 0;
};

// int_1^{1/mu} h(u) cos(w u) du by panel quadrature.
KernelValue inner_cos_transform(const HFunction& h, double omega, const QuadConfig& q = {});

// Two-term by-parts form: -h(1) sin w / w - h'(1) cos w / w^2 - w^{-2} int h'' cos.
struct InnerExpansion {
    double sine_term = 0;
    double cosine_term = 0;
    double remainder = 0;
    double total() const { return sine_term + cosine_term + remainder; }
};
InnerExpansion inner_cos_expansion(const HFunction& h, double omega, const QuadConfig& q = {});

// Outer log-weighted integrals against the inner transform H(w) = int_1^inf h(u) cos(w u) du
// (extended to u in (0,inf) for the full-line kernel):
//   full_pair(w1, w2)  = int_0^inf log v cos(w1 v) Hfull(w2 v) dv, Hfull over u in (0, inf)
//   tail_pair(w1, w2)  = int_1^inf log v cos(w1 v) H(w2 v) dv      (Abel sense)
//   unit_pair(w1, w2)  = int_0^1   log v cos(w1 v) H(w2 v) dv
// each reduced by one integration by parts in u to proper integrals of closed-form kernels.
KernelValue full_pair(const HFunction& h, double w1, double w2, const QuadConfig& q = {});
KernelValue tail_pair(const HFunction& h, double w1, double w2, const QuadConfig& q = {});
KernelValue unit_pair(const HFunction& h, double w1, double w2, const QuadConfig& q = {});

// Sum over beta in f1, gamma in f2 of varpi(beta) varpi(gamma) K(2 pi beta, 2 pi gamma),
// with the refinement difference against the half-bound lattices as the tail estimate.
struct LatticeSum {
    double value = 0;
    double quad_error = 0;
    double tail = 0;
    double half_bound_value = 0;
    struct Term {
        Frequency beta, gamma;
        double weight = 0;
        double kernel = 0;
    };
    std::vector<Term> terms;  // filled only when requested
};

using PairKernel = std::function<KernelValue(const HFunction&, double, double, const QuadConfig&)>;

LatticeSum lattice_pair_sum(const HFunction& h, const NSLattice& l1, const NSLattice& l2,
                            const PairKernel& kernel, const QuadConfig& q, bool keep_terms = false);

// C = |h(1)| + int |h'|, the constant in |int_1^inf h(u) cos(w u) du| <= C / w.
double by_parts_constant(const HFunction& h);

}  // namespace weilab
