#include "foelner/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace foelner {

int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* cap = std::getenv("FOELNER_THREADS")) {
        try {
            int c = std::stoi(cap);
            if (c >= 1 && c < n) n = c;
        } catch (const std::exception&) {
            // Unparseable cap is ignored.
        }
    }
    return n < 1 ? 1 : n;
}

}  // namespace foelner
