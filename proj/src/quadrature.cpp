#include "weilab/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace weilab {

static GaussRule build_rule(int n) {
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1, p2 = 0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        g.x[i] = -z;
        g.x[n - 1 - i] = z;
        g.w[i] = g.w[n - 1 - i] = 2 / ((1 - z * z) * pp * pp);
    }
    return g;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex m;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
    return *slot;
}

std::vector<double> graded_breaks(double a, double b, const std::vector<double>& cuts,
                                  int base_panels, int depth) {
    std::vector<double> br = uniform_breaks(a, b, std::max(1, base_panels));
    double width = (b - a) / std::max(1, base_panels);
    for (double c : cuts) {
        if (!(c >= a && c <= b)) continue;
        br.push_back(c);
        double r = width;
        // stop before panels shrink to rounding level around c
        double floor = 1e4 * 2.220446049250313e-16 * std::abs(c);
        for (int k = 0; k < depth && r > floor; ++k) {
            if (c - r > a) br.push_back(c - r);
            if (c + r < b) br.push_back(c + r);
            r *= 0.5;
        }
    }
    std::sort(br.begin(), br.end());
    std::vector<double> out;
    for (double v : br)
        if (out.empty() || v > out.back()) out.push_back(v);
    return out;
}

}  // namespace weilab
