#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace chainent {

/// Number of OpenMP threads to use for `workers` (0 means the runtime default).
int resolve_workers(int workers);

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// thrown by any iteration is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn)
{
    std::exception_ptr error;
    std::mutex guard;
    const int threads = resolve_workers(workers);
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < n; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace chainent
