#ifndef CORRMETRIC_PARALLEL_HPP
#define CORRMETRIC_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace corrmetric {

/// Worker count for internal parallelism: hardware concurrency, capped by the
/// CORRMETRIC_THREADS environment variable when set to a positive integer.
inline std::size_t thread_budget() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CORRMETRIC_THREADS")) {
        const long v = std::atol(env);
        if (v > 0 && static_cast<std::size_t>(v) < n) n = static_cast<std::size_t>(v);
    }
    return n;
}

/// Splits [0, total) into contiguous chunks, runs `work(begin, end)` on each,
/// and returns the per-chunk results ordered by chunk index. The chunking is a
/// pure function of `total`, never of the worker count, so any reduction that
/// folds the returned vector left-to-right is independent of scheduling.
template <typename R, typename Work>
std::vector<R> map_chunks(std::size_t total, Work work) {
    constexpr std::size_t kChunk = 1024;
    const std::size_t n_chunks = total == 0 ? 0 : (total + kChunk - 1) / kChunk;
    std::vector<R> results(n_chunks);
    const std::size_t workers = std::min(thread_budget(), n_chunks ? n_chunks : std::size_t{1});

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            results[c] = work(c * kChunk, std::min(total, (c + 1) * kChunk));
        }
        return results;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < n_chunks; c += workers) {
                results[c] = work(c * kChunk, std::min(total, (c + 1) * kChunk));
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace corrmetric

#endif
