#include "sslab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <mutex>
#include <string>

namespace sslab {

void configure_threads() {
  static std::once_flag once;
  std::call_once(once, [] {
    const char* env = std::getenv("SEMISTABLE_LAB_THREADS");
    if (env == nullptr) return;
    try {
      int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // Malformed values leave the OpenMP default in place.
    }
  });
}

int max_threads() {
  configure_threads();
  return omp_get_max_threads();
}

}  // namespace sslab
