#include "dagcover/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dagcover {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(threads < 1 ? 1 : threads);
#else
  (void)threads;
#endif
}

}  // namespace dagcover
