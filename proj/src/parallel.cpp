#include "otfsisac/parallel.hpp"

namespace otfsisac {

void set_workers(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

int effective_workers() { return omp_get_max_threads(); }

}  // namespace otfsisac
