#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kquant {

/// Default worker count: KQUANT_WORKERS env var if set, else hardware parallelism.
inline int default_workers() {
    if (const char* env = std::getenv("KQUANT_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Evaluates fn(0..count-1) across workers; results land in index order, so
/// output is deterministic regardless of scheduling. fn must be thread-safe.
template <class Fn>
auto parallel_map(int count, const Fn& fn, int workers = 0) {
    using R = decltype(fn(0));
    std::vector<R> out(static_cast<size_t>(count));
    if (workers <= 0)
        workers = default_workers();
    workers = std::min(workers, count > 0 ? count : 1);
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error)
                    error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace kquant
