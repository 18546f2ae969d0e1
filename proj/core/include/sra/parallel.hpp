#pragma once

#include <cstdint>
#include <functional>

namespace sra {

/// Worker count used when a caller passes threads == 0: the SRA_THREADS
/// environment variable if set and positive, otherwise the hardware count.
int default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Scheduling is dynamic; callers must make body(i) independent of execution
/// order (indexed writes, counter-derived RNG streams).
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& body);

/// Iteration chunk used by deterministic reductions over Monte-Carlo
/// replicates. Fixed so that partial-sum boundaries, and therefore the
/// floating-point result, do not depend on the worker count.
inline constexpr int kReductionChunk = 64;

}  // namespace sra
