#include "weilab/trace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weilab/quadrature.hpp"
#include "weilab/special.hpp"

namespace weilab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SeriesValue term1_series(const HFunction& h, const NSLattice& l1, const NSLattice& l2, const QuadConfig& q,
                         bool keep_terms) {
    SeriesValue out;
    if (h.source().is_zero()) return out;
    LatticeSum s = lattice_pair_sum(h, l1, l2, tail_pair, q, keep_terms);
    out.value = 4 * s.value;
    out.quad_error = 4 * s.quad_error;
    out.tail = 4 * s.tail;
    out.terms = std::move(s.terms);
    return out;
}

TraceReport trace_vht(const HFunction& h, const NSLattice& l1, const NSLattice& l2, const QuadConfig& q) {
    TraceReport r;
    SeriesValue t = term1_series(h, l1, l2, q);
    // {|u| >= 1} and {|u| > 1} differ by a null set, so the second term is the same reduction
    r.term1 = t.value;
    r.term2 = t.value;
    r.trace = r.term1 + r.term2;
    r.corollary_sum = r.term1 / 4;
    r.tail_estimates["term1"] = t.tail + t.quad_error;
    r.tail_estimates["term2"] = t.tail + t.quad_error;
    r.tail_estimates["trace"] = 2 * (t.tail + t.quad_error);
    r.tail_estimates["corollary_sum"] = (t.tail + t.quad_error) / 4;
    return r;
}

std::pair<SeriesValue, SeriesValue> corrections_thm16(const HFunction& h, const NSLattice& l1,
                                                      const NSLattice& l2, const QuadConfig& q) {
    SeriesValue c;
    if (!h.source().is_zero()) {
        LatticeSum s = lattice_pair_sum(h, l1, l2, unit_pair, q);
        c.value = 4 * s.value;
        c.quad_error = 4 * s.quad_error;
        c.tail = 4 * s.tail;
    }
    // C2 integrates over |u| > 1 instead of |u| >= 1: identical after reduction
    return {c, c};
}

double verify_thm16(const HFunction& h, const WeilBreakdown& weil, TraceReport& report, const NSLattice& l1,
                    const NSLattice& l2, const QuadConfig& q) {
    if (std::abs(weil.h_hat_0) > 1e-9 || std::abs(weil.h_hat_1) > 1e-9)
        throw std::invalid_argument("verify_thm16: h-hat(0) or h-hat(1) is not zero; project the test function");
    auto [c1, c2] = corrections_thm16(h, l1, l2, q);
    report.C1 = c1.value;
    report.C2 = c2.value;
    report.has_corrections = true;
    report.tail_estimates["C1"] = c1.tail + c1.quad_error;
    report.tail_estimates["C2"] = c2.tail + c2.quad_error;
    report.delta0 = -weil.prime_sum_total;
    report.residual_thm16 = report.trace - (weil.delta - report.C1 - report.C2);
    report.has_residual = true;
    report.tail_estimates["residual_thm16"] = report.tail_estimates["trace"] + report.tail_estimates["C1"] +
                                              report.tail_estimates["C2"] + weil.quadrature_error_estimate;
    return report.residual_thm16;
}

ReproducingResult log_reproducing_check(const HFunction& h, const QuadConfig& q, double U) {
    ReproducingResult out;
    double mu = h.mu();
    auto f = [&](double l) { return l < 1 ? h(l) * std::log(1 / l) : 0.0; };
    for (int k = 0; k < 10; ++k) out.points.push_back(mu + (1 - mu) * (k + 1) / 10.0);  // ends at 1
    double h1 = h(1.0);
    for (double y : out.points) {
        out.expected.push_back(f(y));
        if (h.source().is_zero()) {
            out.reproduced.push_back(0);
            continue;
        }
        // 4 int_0^U cos(2 pi y v) cos(2 pi l v) dv in closed form, then the l-integral
        auto dk = [&](double c) { return std::abs(c) < 1e-14 ? U : std::sin(2 * kPi * c * U) / (2 * kPi * c); };
        auto g = [&](double l) { return 2 * f(l) * (dk(l + y) + dk(l - y)); };
        auto br = graded_breaks(mu, 1, {y}, 32 + int(4 * U * (1 - mu)));
        double body = integrate_doubling(g, br, q.rel_tol, 1e-15).value;
        // v > U: the inner transform is -h(1) cos(2 pi v)/(2 pi v)^2 + O(v^-3) (kink of f at 1)
        auto cos_tail = [&](double c) {  // int_U^inf cos(c v)/v^2 dv
            if (c == 0) return 1 / U;
            c = std::abs(c);
            return std::cos(c * U) / U - c * (kPi / 2 - sine_integral(c * U));
        };
        double tail = -4 * h1 / (4 * kPi * kPi) * 0.5 * (cos_tail(2 * kPi * (1 + y)) + cos_tail(2 * kPi * (1 - y)));
        out.reproduced.push_back(body + tail);
    }
    for (size_t i = 0; i < out.points.size(); ++i)
        out.max_residual = std::max(out.max_residual, std::abs(out.reproduced[i] - out.expected[i]));
    return out;
}

nlohmann::json to_json(const TraceReport& r) {
    nlohmann::json j = {{"term1", r.term1},   {"term2", r.term2},
                        {"trace", r.trace},   {"corollary_sum", r.corollary_sum},
                        {"tail_estimates", r.tail_estimates}};
    if (r.has_corrections) j["corrections"] = {r.C1, r.C2};
    if (r.has_residual) {
        j["delta0"] = r.delta0;
        j["residual_thm16"] = r.residual_thm16;
    }
    return j;
}

std::string terms_csv(const std::vector<LatticeSum::Term>& terms) {
    std::ostringstream os;
    os.precision(17);
    os << "beta_num,beta_den,gamma_num,gamma_den,weight,kernel\n";
    for (const auto& t : terms)
        os << t.beta.num << ',' << t.beta.den << ',' << t.gamma.num << ',' << t.gamma.den << ',' << t.weight << ','
           << t.kernel << '\n';
    return os.str();
}

}  // namespace weilab
