#include "fracblowup/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracblowup {

int apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("FRACBLOWUP_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) omp_set_num_threads(cap);
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace fracblowup
