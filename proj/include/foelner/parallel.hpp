#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace foelner {

// Kernels with a data-parallel loop come in two flavours. Serial is the
// reference path the tests compare against.
enum class Execution { Serial, Parallel };

// OpenMP worker count, capped by the FOELNER_THREADS environment variable.
int worker_count();

// body(i) for i in [0, n). Each index writes only its own slot, so results
// never depend on scheduling. The lowest-index exception is rethrown.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::size_t error_index = n;
    std::mutex guard;
    const long count = static_cast<long>(n);
#pragma omp parallel for num_threads(worker_count()) schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (static_cast<std::size_t>(i) < error_index) {
                error_index = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace foelner
