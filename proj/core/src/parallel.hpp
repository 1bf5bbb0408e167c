#pragma once

// Chunked parallel loop over [0, count). Results must be written to
// per-index slots by the body; the first exception (by index) wins, which
// keeps error reporting deterministic regardless of thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace helixkit::detail {

template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t workers = std::min<std::size_t>(hw, count);
    if (workers <= 1 || count < 32) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    struct Failure {
        std::size_t index;
        std::exception_ptr error;
    };
    std::vector<Failure> failures(workers, Failure{count, nullptr});
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        threads.emplace_back([&, w, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    body(i);
                } catch (...) {
                    failures[w] = Failure{i, std::current_exception()};
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();

    const Failure* first = nullptr;
    for (const auto& f : failures)
        if (f.error && (!first || f.index < first->index)) first = &f;
    if (first) std::rethrow_exception(first->error);
}

}  // namespace helixkit::detail
