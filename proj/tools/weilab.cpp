// Command line front end: runs the checks and writes a JSON report.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weilab/operator.hpp"
#include "weilab/places.hpp"
#include "weilab/trace.hpp"
#include "weilab/verify.hpp"
#include "weilab/weil.hpp"

using nlohmann::json;
using ojson = nlohmann::ordered_json;
using namespace weilab;

namespace {

const char* kSchema = "weilab.report/1";

struct RunConfig {
    json function = "default";  // {"bumps": [...]}, "random:<seed>", "default", "default-two-place"
    bool project_moments = true;
    std::vector<double> random_log_radius = {0.10, 0.34};
    std::optional<double> mu_override;
    double lambda = 2;
    int64_t lattice_bound = int64_t(1) << 30;
    QuadConfig quad;
    int grid_n = 600;
    double grid_x_max = 1000;
    uint64_t seed = 1;
};

json echo(const RunConfig& c) {
    json j = {{"test_function", c.function},
              {"project_moments", c.project_moments},
              {"random_log_radius", c.random_log_radius},
              {"mu_override", c.mu_override ? json(*c.mu_override) : json(nullptr)},
              {"lambda", c.lambda},
              {"lattice_bound", c.lattice_bound},
              {"quadrature",
               {{"rel_tol", c.quad.rel_tol},
                {"abs_tol", c.quad.abs_tol},
                {"direct_limit", c.quad.direct_limit},
                {"window", c.quad.window},
                {"panels_per_period", c.quad.panels_per_period},
                {"workers", c.quad.workers}}},
              {"grid_n", c.grid_n},
              {"grid_x_max", c.grid_x_max},
              {"seed", c.seed}};
    return j;
}

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

RunConfig load_config(const std::string& path) {
    RunConfig c;
    if (path.empty()) return c;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config " + path + ": expected a JSON object");
    static const std::set<std::string> known = {"test_function", "project_moments", "random_log_radius",
                                                "mu_override",   "lambda",          "lattice_bound",
                                                "quadrature",    "grid_n",          "grid_x_max",
                                                "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw std::runtime_error("config " + path + ": unknown key '" + it.key() + "'");
    if (j.contains("test_function")) c.function = j.at("test_function");
    take(j, "project_moments", c.project_moments);
    take(j, "random_log_radius", c.random_log_radius);
    if (j.contains("mu_override") && !j.at("mu_override").is_null()) c.mu_override = j.at("mu_override").get<double>();
    take(j, "lambda", c.lambda);
    take(j, "lattice_bound", c.lattice_bound);
    take(j, "grid_n", c.grid_n);
    take(j, "grid_x_max", c.grid_x_max);
    take(j, "seed", c.seed);
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        take(q, "rel_tol", c.quad.rel_tol);
        take(q, "abs_tol", c.quad.abs_tol);
        take(q, "direct_limit", c.quad.direct_limit);
        take(q, "window", c.quad.window);
        take(q, "panels_per_period", c.quad.panels_per_period);
        take(q, "workers", c.quad.workers);
    }
    return c;
}

void validate(const RunConfig& c) {
    if (!(c.lambda > 1)) throw std::invalid_argument("lambda must exceed 1");
    if (!(c.quad.rel_tol > 0 && c.quad.abs_tol > 0)) throw std::invalid_argument("tolerances must be positive");
    if (c.quad.workers < 0) throw std::invalid_argument("workers must be >= 0");
    if (c.lattice_bound < 1) throw std::invalid_argument("lattice_bound must be positive");
    if (c.grid_n < 16) throw std::invalid_argument("grid_n must be at least 16");
    if (!(c.grid_x_max > c.lambda)) throw std::invalid_argument("grid_x_max must exceed lambda");
    if (c.random_log_radius.size() != 2 || !(c.random_log_radius[0] > 0 && c.random_log_radius[1] > c.random_log_radius[0]))
        throw std::invalid_argument("random_log_radius must be [lo, hi] with 0 < lo < hi");
}

TestFunction build_function(const RunConfig& c) {
    TestFunction g;
    const json& f = c.function;
    if (f.is_string()) {
        std::string s = f.get<std::string>();
        if (s == "default") g = default_test_function();
        else if (s == "default-two-place") g = default_two_place_function();
        else if (s.rfind("random:", 0) == 0) {
            uint64_t seed = std::stoull(s.substr(7));
            g = random_test_function(seed, c.random_log_radius[0], c.random_log_radius[1]);
        } else {
            throw std::invalid_argument("test_function: expected bumps, \"default\", \"default-two-place\" or \"random:<seed>\"");
        }
    } else if (f.is_object()) {
        g = test_function_from_json(f);
    } else {
        throw std::invalid_argument("test_function: expected an object or a string");
    }
    if (c.project_moments && !g.is_zero()) {
        ProjectionOptions keep;
        keep.allow_widen = false;
        try {
            g = project_vanishing_moment(g, keep);
        } catch (const std::runtime_error&) {
            g = project_vanishing_moment(g);  // no free gap inside: widen the support
        }
    }
    if (c.mu_override) g = g.with_mu(*c.mu_override);
    return g;
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw std::runtime_error("cannot write " + (std::filesystem::path(dir) / name).string());
    out << body;
}

std::vector<int> checks_for(const std::string& cmd) {
    if (cmd == "verify-all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    if (cmd == "weil") return {1, 2, 3};
    if (cmd == "trace") return {4, 9};
    if (cmd == "corollary15") return {5};
    if (cmd == "spectrum") return {6, 7, 8};
    return {9, 10, 11};  // kernels
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for the Weil distribution and the operator V(h)T"};
    app.require_subcommand(1, 1);
    std::string config_path, out_path, csv_dir;
    std::optional<double> mu_override, lambda;
    std::optional<int64_t> lattice_bound;
    std::optional<int> grid_n, workers;
    std::optional<uint64_t> seed;
    bool timing = false, quiet = false;
    for (const char* name : {"verify-all", "weil", "trace", "spectrum", "corollary15", "kernels"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--mu-override", mu_override, "use a smaller support parameter mu");
        sub->add_option("--lambda", lambda, "cutoff Lambda > 1");
        sub->add_option("--lattice-bound", lattice_bound, "bound on the N_S lattice");
        sub->add_option("--grid-n", grid_n, "operator grid size");
        sub->add_option("--seed", seed, "seed for the random function families");
        sub->add_option("--workers", workers, "worker threads (0: one per core); results do not depend on it");
        sub->add_option("--out", out_path, "write the JSON report here (default: stdout)");
        sub->add_option("--csv-dir", csv_dir, "directory for CSV exports");
        sub->add_flag("--timing", timing, "include wall-clock seconds (the report is then not reproducible)");
        sub->add_flag("--quiet", quiet, "no progress lines on stderr");
    }
    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands().front()->get_name();

    RunConfig rc;
    TestFunction g;
    try {
        rc = load_config(config_path);
        if (mu_override) rc.mu_override = mu_override;
        if (lambda) rc.lambda = *lambda;
        if (lattice_bound) rc.lattice_bound = *lattice_bound;
        if (grid_n) rc.grid_n = *grid_n;
        if (seed) rc.seed = *seed;
        if (workers) rc.quad.workers = *workers;
        validate(rc);
        g = build_function(rc);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    ojson report = {{"schema", kSchema}, {"command", cmd}, {"config", echo(rc)}};
    bool ok = true;
    try {
        VerifyConfig vc;
        vc.g = g;
        vc.lambda = rc.lambda;
        vc.quad = rc.quad;
        vc.lattice_bound = rc.lattice_bound;
        vc.grid_n = rc.grid_n;
        vc.grid_x_max = rc.grid_x_max;
        vc.seed = rc.seed;
        vc.csv_dir = csv_dir;
        Verifier v(vc);

        HFunction h(g);
        PlaceSet ps = compute_place_set(h.mu());
        report["test_function"] = to_json(g);
        report["mu"] = g.mu();
        report["places"] = ps.primes;
        report["h_hat_0"] = std::abs(mellin_h(h, 0.0));
        report["h_hat_1"] = std::abs(mellin_h(h, 1.0));
        bool projected = report["h_hat_0"].get<double>() <= 1e-9 && report["h_hat_1"].get<double>() <= 1e-9;
        NSLattice lat = build_lattice(ps, true, rc.lattice_bound);

        if (cmd == "verify-all" || cmd == "weil" || cmd == "trace") {
            WeilBreakdown w = weil_distribution(h, lat, rc.quad);
            report["weil"] = to_json(w);
            write_file(csv_dir, "lattice.csv", lattice_csv(lat));
            if (cmd != "weil") {
                TraceReport t = trace_vht(h, lat, lat, rc.quad);
                if (projected) verify_thm16(h, w, t, lat, lat, rc.quad);
                report["trace"] = to_json(t);
                if (!csv_dir.empty()) write_file(csv_dir, "term1_terms.csv", terms_csv(term1_series(h, lat, lat, rc.quad, true).terms));
            }
        }
        if (cmd == "corollary15") {
            SeriesValue s = term1_series(h, lat, lat, rc.quad, !csv_dir.empty());
            report["corollary15"] = {{"sum", s.value / 4}, {"tail", s.tail / 4}, {"quad_error", s.quad_error / 4},
                                     {"lattice_bound", lat.bound}};
            if (!csv_dir.empty()) write_file(csv_dir, "corollary15_terms.csv", terms_csv(s.terms));
        }
        if (cmd == "verify-all" || cmd == "spectrum") {
            const auto& st = v.operator_study();
            report["operator"] = {{"function", to_json(v.operator_function())},
                                  {"grid_size", st.grid->size()},
                                  {"x_max", st.grid->x_max},
                                  {"T", {{"min", st.T.min}, {"max", st.T.max}}},
                                  {"Vh", {{"min", st.Vh.min}, {"max", st.Vh.max}}},
                                  {"VhT", to_json(st.vht, cmd == "spectrum")},
                                  {"traces",
                                   {{"series", st.series_trace},
                                    {"diagonal", st.diagonal_trace},
                                    {"eigenvalue_sum", st.vht.eigenvalue_sum},
                                    {"eigenvalue_sum_doubled_grid", st.trace_fine}}}};
            write_file(csv_dir, "spectrum_vht.csv", spectrum_csv(st.vht));
            if (cmd == "spectrum") write_file(csv_dir, "matrix_vht.csv", matrix_csv(st.vht_matrix));
        }
        if (cmd == "kernels") {
            const HFunction& oh = v.operator_h();
            json rows = json::array();
            std::ostringstream csv;
            csv.precision(15);
            csv << "x,y,kernel\n";
            for (double x : {0.6, 1.0, 1.5, 3.0})
                for (double y : {0.6, 1.0, 1.5, 3.0}) {
                    double k = kernel_vht(x, y, oh, rc.lambda);
                    rows.push_back({{"x", x}, {"y", y}, {"kernel", k}});
                    csv << x << ',' << y << ',' << k << '\n';
                }
            report["kernel_samples"] = rows;
            write_file(csv_dir, "kernel_samples.csv", csv.str());
        }

        json checks = json::array();
        for (int id : checks_for(cmd)) {
            CheckResult r = v.run(id);
            ok = ok && r.passed;
            if (!quiet)
                std::cerr << "criterion " << id << (r.passed ? " PASS " : " FAIL ") << r.name << " (" << r.value
                          << " vs " << r.tolerance << ")" << (r.error.empty() ? "" : " error: " + r.error) << "\n";
            checks.push_back(to_json(r, timing));
        }
        report["checks"] = checks;
    } catch (const std::exception& e) {
        report["error"] = e.what();
        ok = false;
        std::cerr << cmd << " failed: " << e.what() << "\n";
    }
    report["passed"] = ok;
    if (timing)
        report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return ok ? 0 : 1;
}
