#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weilab/operator.hpp"
#include "weilab/reduction.hpp"
#include "weilab/testfn.hpp"

// The acceptance checks, shared by the acceptance test and the command line tool.
namespace weilab {

// The default test function: an antisymmetric bump pair, so g-hat(0) = 0 and h-hat(0) =
// h-hat(1) = 0; mu = e^{-0.6} > 1/2, so no finite place enters.
TestFunction default_test_function();
// Same shape with mu = e^{-0.8}: the place set is {2}.
TestFunction default_two_place_function();

struct VerifyConfig {
    TestFunction g = default_test_function();
    double lambda = 2;
    QuadConfig quad;
    int64_t lattice_bound = int64_t(1) << 30;  // identity check with the place 2
    int64_t route_bound = int64_t(1) << 24;    // route check, run at this bound and twice it
    int grid_n = 600;
    double grid_x_max = 1000;
    double factor_x_max = 20;  // span of the V(g)V(g*) refinement study
    uint64_t seed = 1;
    int identity_per_set = 3;   // projected random functions per place set
    int positivity_per_set = 10;
    // lattice bounds for the positivity sums over the empty set, {2} and {2,3}
    std::vector<int64_t> positivity_bounds = {512, int64_t(1) << 16, int64_t(1) << 12};
    std::string csv_dir;  // matrices, spectra and per-term sums go here when set
};

struct CheckResult {
    int id = 0;
    std::string name;
    std::string criterion;  // the pass condition with its tolerance
    bool passed = false;
    double value = 0;  // the quantity compared against the tolerance
    double tolerance = 0;
    std::string error;  // set when the check threw
    double seconds = 0;
    nlohmann::json detail = nlohmann::json::object();
};

class Verifier {
public:
    explicit Verifier(VerifyConfig cfg);

    const VerifyConfig& config() const { return cfg_; }
    static int check_count() { return 11; }
    // Runs check id (1..11); exceptions are caught and reported as failures.
    CheckResult run(int id);
    std::vector<CheckResult> run_all(const std::function<void(const CheckResult&)>& progress = {});

    // Pieces reused by the individual subcommands.
    const HFunction& h();
    // The function used for the operator checks: the configured one when mu > 1/2,
    // otherwise the default.
    const TestFunction& operator_function();
    const HFunction& operator_h();

    struct OperatorStudy {
        std::shared_ptr<const LogGrid> grid;
        SymmetricSpectrum T, Vh;
        OperatorMatrix vht_matrix;
        Spectrum vht;
        double trace_fine = 0;  // eigenvalue sum of V(h)T on the doubled grid
        double series_trace = 0, diagonal_trace = 0, diagonal_error = 0;
    };
    const OperatorStudy& operator_study();

private:
    CheckResult autocorrelation_laws();
    CheckResult finite_place_vanishing();
    CheckResult route_consistency();
    CheckResult trace_identity();
    CheckResult corollary_positivity();
    CheckResult positivity_spectra();
    CheckResult triple_trace();
    CheckResult factorization();
    CheckResult reproducing();
    CheckResult regularization();
    CheckResult decay();

    void write_csv(const std::string& name, const std::string& body) const;

    VerifyConfig cfg_;
    std::optional<HFunction> h_, op_h_;
    std::optional<TestFunction> op_g_;
    std::optional<OperatorStudy> study_;
};

nlohmann::json to_json(const CheckResult& r, bool with_timing = false);

// Abel value of int_a^inf f(v) dv from e^{-eps v}-damped quadrature at eps, eps/2, eps/4,
// Richardson-extrapolated to eps = 0; w is the oscillation frequency of f.
double abel_extrapolate(const std::function<double(double)>& f, double a, double w, double eps = 1e-2);

}  // namespace weilab
