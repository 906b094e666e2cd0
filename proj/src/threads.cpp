#include "fbmf/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbmf {

int thread_budget() {
  int hw = 1;
#ifdef _OPENMP
  hw = omp_get_max_threads();
#endif
  const char* env = std::getenv("FBM_FORECAST_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  try {
    const int requested = std::stoi(env);
    if (requested <= 0) return hw;  // 0 = auto
    return requested;
  } catch (...) {
    return hw;
  }
}

}  // namespace fbmf
