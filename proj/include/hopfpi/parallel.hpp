#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace hopfpi {

// HOPFPI_THREADS caps worker count; defaults to hardware concurrency.
inline unsigned max_threads() {
    if (const char* env = std::getenv("HOPFPI_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Work-stealing-free parallel for over [0, n). f(i) writes only to slot i of
// pre-sized output storage, so results are deterministic regardless of
// scheduling. Exceptions are collected and the first one rethrown.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t t = std::min<std::size_t>(max_threads(), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(t);
    std::vector<std::thread> workers;
    workers.reserve(t);
    for (std::size_t k = 0; k < t; ++k)
        workers.emplace_back([&, k] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace hopfpi
