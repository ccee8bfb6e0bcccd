#include "causalmt/parallel.hpp"

#include <cstdlib>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace causalmt {

int effective_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = static_cast<int>(std::thread::hardware_concurrency());
#endif
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("CAUSALMT_THREADS")) {
    int c = std::atoi(cap);
    if (c >= 1 && c < n) n = c;
  }
  return n;
}

}  // namespace causalmt
