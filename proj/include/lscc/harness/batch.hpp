#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

#include "lscc/harness/rng.hpp"

namespace lscc {

/// Fan a seeded job out across worker threads. Results land in a vector
/// indexed by run index, so aggregation order is deterministic regardless of
/// scheduling.
template <typename Result>
std::vector<Result> run_batch(int count, uint64_t master_seed,
                              const std::function<Result(int index, uint64_t seed)>& job,
                              unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));

    std::vector<Result> results(static_cast<size_t>(count));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                results[static_cast<size_t>(i)] =
                    job(i, Rng::derive_seed(master_seed, static_cast<uint64_t>(i)));
        });
    for (auto& t : pool) t.join();
    return results;
}

} // namespace lscc
