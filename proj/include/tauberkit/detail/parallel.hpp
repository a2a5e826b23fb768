#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace tauberkit::detail {

// Worker-thread cap: TAUBERKIT_THREADS env var; 0 or unset means "auto"
// (hardware concurrency).  1 disables threading entirely.
inline unsigned thread_budget() {
    unsigned n = 0;
    if (const char* env = std::getenv("TAUBERKIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<unsigned>(v);
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

// Runs fn(i) for i in [0, n).  Work is split into fixed contiguous chunks so
// the partition (and therefore any per-index output written by fn) does not
// depend on thread scheduling.  fn must only write to index-owned state.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned budget = std::min<std::size_t>(thread_budget(), n);
    if (budget <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(budget);
    std::vector<std::exception_ptr> errors(budget);
    const std::size_t chunk = (n + budget - 1) / budget;
    for (unsigned w = 0; w < budget; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace tauberkit::detail
