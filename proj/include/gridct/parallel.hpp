#pragma once

namespace gridct::par {

// Global worker count for the parallel kernels. 1 selects the serial
// reference paths, 0 lets OpenMP pick. Parallel and serial paths must
// produce identical output; tests compare them directly.
void set_threads(int n);
int threads();

// Thread count a parallel region should actually request.
int effective_threads();

bool openmp_available();

}  // namespace gridct::par
