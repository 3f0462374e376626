#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "nilws/matrix.hpp"

namespace nilws {

/// Deterministic splitmix64-based generator. Self-contained so that seeded
/// reports are reproducible across standard libraries; worker streams derive
/// from (seed, stream index).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0;
        while (u1 == 0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    VecD normal_vector(std::size_t n) {
        VecD v(n);
        for (auto& x : v) x = normal();
        return v;
    }

    /// Uniform on the Euclidean unit sphere.
    VecD unit_vector(std::size_t n) {
        VecD v = normal_vector(n);
        double s = norm2(v);
        while (s < 1e-12) { v = normal_vector(n); s = norm2(v); }
        for (auto& x : v) x /= s;
        return v;
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0;
};

/// Worker count: min(hardware, n), capped by NILWS_THREADS when set.
inline unsigned worker_count(std::size_t n_items) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NILWS_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, n_items)));
}

/// Index-parallel loop with deterministic work assignment; results must be
/// written into per-index slots by fn.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace nilws
