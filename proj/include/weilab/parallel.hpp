#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace weilab {

// Number of workers to use; 0 means one per hardware thread.
inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

// out[i] = f(i) for i < n, computed by static contiguous chunks. Results depend only on i,
// so the output is identical for any worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f, int workers = 0) {
    std::vector<T> out(n);
    int w = std::min<int>(resolve_workers(workers), int(std::max<std::size_t>(n, 1)));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    std::size_t chunk = (n + w - 1) / w;
    for (int t = 0; t < w; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(m);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// Pairwise (tree) summation in index order.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0;
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace weilab
