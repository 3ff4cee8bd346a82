#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mpc {

// Resolve a thread-count request; values <= 0 mean "all available cores".
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Fork-join loop over [0, n) in contiguous ranges. body(begin, end, slot)
// runs on at most `threads` workers; slot identifies the range so callers
// can keep deterministic per-range accumulators. Work assignment is static,
// so results never depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
    if (workers <= 1) {
        body(std::size_t(0), n, std::size_t(0));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace mpc
