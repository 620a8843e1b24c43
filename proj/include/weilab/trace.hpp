#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "weilab/places.hpp"
#include "weilab/reduction.hpp"
#include "weilab/testfn.hpp"
#include "weilab/weil.hpp"

namespace weilab {

struct SeriesValue {
    double value = 0;
    double quad_error = 0;
    double tail = 0;
    std::vector<LatticeSum::Term> terms;  // per frequency pair, when requested
};

struct TraceReport {
    double term1 = 0, term2 = 0, trace = 0, corollary_sum = 0;
    double C1 = 0, C2 = 0;
    double delta0 = 0;  // minus the prime sum
    double residual_thm16 = 0;
    bool has_corrections = false, has_residual = false;
    std::map<std::string, double> tail_estimates;
};

// 4 sum varpi varpi tail_pair over the two lattices (the |u| >= 1 double integral).
SeriesValue term1_series(const HFunction& h, const NSLattice& l1, const NSLattice& l2,
                         const QuadConfig& q = {}, bool keep_terms = false);

// term1, term2 (same reduction), trace = 2 term1, corollary_sum = term1 / 4.
TraceReport trace_vht(const HFunction& h, const NSLattice& l1, const NSLattice& l2, const QuadConfig& q = {});

// The two |v| < 1 correction integrals, 4 sum varpi varpi unit_pair each.
std::pair<SeriesValue, SeriesValue> corrections_thm16(const HFunction& h, const NSLattice& l1,
                                                      const NSLattice& l2, const QuadConfig& q = {});

// Fills corrections, delta0 and the residual trace - (delta - C1 - C2) into the report.
// Throws std::invalid_argument if h-hat(0) or h-hat(1) exceeds 1e-9 (unprojected input).
double verify_thm16(const HFunction& h, const WeilBreakdown& weil, TraceReport& report,
                    const NSLattice& l1, const NSLattice& l2, const QuadConfig& q = {});

// f(y) = h(y) log max(1, 1/y) reproduced by the double cosine transform at sample points.
struct ReproducingResult {
    std::vector<double> points, reproduced, expected;
    double max_residual = 0;
};
ReproducingResult log_reproducing_check(const HFunction& h, const QuadConfig& q = {}, double cutoff = 400);

nlohmann::json to_json(const TraceReport& r);
std::string terms_csv(const std::vector<LatticeSum::Term>& terms);

}  // namespace weilab
