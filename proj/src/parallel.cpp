#include "bicens/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace bicens {

int configure_threads() {
  if (const char* env = std::getenv("BICENS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) omp_set_num_threads(static_cast<int>(v));
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace bicens
