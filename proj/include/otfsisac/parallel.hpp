#pragma once

#ifdef _OPENMP
#include <omp.h>
#else
// Serial stand-ins so the library builds and runs without OpenMP.
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif

namespace otfsisac {

// workers > 0 pins the OpenMP thread count; <= 0 leaves the runtime default.
void set_workers(int workers);

// Thread count parallel regions will currently use.
int effective_workers();

}  // namespace otfsisac
