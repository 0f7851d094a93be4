#pragma once

#include <cstdint>

namespace adamlab {

/// Serial keeps the reference path: identical per-cell computation, plain
/// loop. Campaigns are verified to produce bit-identical results under both
/// policies, and the benchmark target compares their throughput.
enum class ExecutionPolicy { serial, parallel };

/// Runs fn(i) for i in [0, n). Cells must be independent and write only to
/// their own slots; the caller owns result ordering, so output is
/// deterministic regardless of the number of threads.
template <typename Fn>
void for_each_cell(std::int64_t n, ExecutionPolicy policy, Fn&& fn) {
  if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
  }
}

}  // namespace adamlab
