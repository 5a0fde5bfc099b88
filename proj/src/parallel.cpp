#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridct::par {

namespace {
int g_threads = 0;
}

void set_threads(int n) { g_threads = n < 0 ? 0 : n; }

int threads() { return g_threads; }

int effective_threads() {
#ifdef _OPENMP
    return g_threads == 0 ? omp_get_max_threads() : g_threads;
#else
    return 1;
#endif
}

bool openmp_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace gridct::par
