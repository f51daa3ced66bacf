#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace apfree::detail {

// Runs body(begin, end, slot) over contiguous slices of [0, total). Slices are
// fixed by (total, threads), so callers that merge per-slot results in slot
// order get schedule-independent output. The first exception is rethrown.
template <typename Body>
void parallel_slices(std::uint64_t total, unsigned threads, Body && body)
{
    threads = std::max(1U, threads);
    if (threads == 1 || total < 2) {
        body(std::uint64_t{0}, total, 0U);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            auto begin = total * t / threads;
            auto end = total * (t + 1) / threads;
            pool.emplace_back([&, begin, end, t] {
                try {
                    body(begin, end, t);
                }
                catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (! error)
                        error = std::current_exception();
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace apfree::detail
