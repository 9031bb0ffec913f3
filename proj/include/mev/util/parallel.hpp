#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mev {

// Worker count, capped by the MEV_ARENA_THREADS environment variable.
inline unsigned thread_budget()
{
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* s = std::getenv("MEV_ARENA_THREADS")) {
        try {
            long v = std::stol(s);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return hw;
}

// Runs f(i) for i in [0, n) across threads. Each index writes only its own
// output slot, so results are identical for any worker count.
template <typename F>
void parallel_for(std::size_t n, F&& f)
{
    const unsigned workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += used) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace mev
