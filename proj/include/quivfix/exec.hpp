#pragma once

#include <cstddef>
#include <cstdint>

namespace quivfix {

/// Execution policy for the enumeration kernels. Every kernel has a plain
/// serial loop (the reference) and an OpenMP variant; both produce
/// identical, deterministically ordered output.
enum class ExecPolicy { Serial, Parallel };

/// Thread count used by Parallel kernels: QUIVFIX_THREADS if set, else the
/// OpenMP default. Returns 1 when built without OpenMP.
int worker_threads();

/// Runs fn(begin, end) over chunks of [0, n). Serial: one chunk. Parallel:
/// OpenMP static chunks. fn must write only to disjoint, index-addressed
/// slots so the result does not depend on the schedule.
void for_each_chunk(std::size_t n, ExecPolicy policy, void (*fn)(std::size_t, std::size_t, void*),
                    void* state);

template <class F>
void parallel_chunks(std::size_t n, ExecPolicy policy, F&& fn) {
  auto thunk = [](std::size_t b, std::size_t e, void* s) { (*static_cast<F*>(s))(b, e); };
  for_each_chunk(n, policy, thunk, &fn);
}

}  // namespace quivfix
