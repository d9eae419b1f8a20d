#include "consec/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <omp.h>

namespace consec {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    int value = 0;
    auto [end, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc() && *end == '\0' && value > 0) return value;
  }
  return omp_get_max_threads();
}

}  // namespace consec
