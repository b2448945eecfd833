#include "quivfix/exec.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quivfix {

int worker_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("QUIVFIX_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void for_each_chunk(std::size_t n, ExecPolicy policy, void (*fn)(std::size_t, std::size_t, void*),
                    void* state) {
  if (n == 0) return;
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
    const std::size_t threads = std::min<std::size_t>(std::size_t(worker_threads()), n);
    const std::size_t chunk = (n + threads - 1) / threads;
#pragma omp parallel for num_threads(int(threads)) schedule(static, 1)
    for (long long t = 0; t < (long long)threads; ++t) {
      std::size_t b = std::size_t(t) * chunk;
      std::size_t e = std::min(n, b + chunk);
      if (b < e) fn(b, e, state);
    }
    return;
  }
#else
  (void)policy;
#endif
  fn(0, n, state);
}

}  // namespace quivfix
