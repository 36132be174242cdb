#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace whml {

// WHML_THREADS caps worker count; default is the hardware count
inline unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WHML_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return unsigned(std::min<long>(v, 1024));
    }
    return hw;
}

// f(i) for i in [0, n); indices are dealt round-robin, the first exception is rethrown
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    unsigned nt = unsigned(std::min<std::size_t>(worker_count(), n));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += nt)
                    f(i);
            } catch (...) {
                std::lock_guard lk(mu);
                if (!err)
                    err = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace whml
