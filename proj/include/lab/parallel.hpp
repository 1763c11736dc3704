#pragma once
// Deterministic parallel reductions. Work is split into a FIXED number of
// slabs (independent of thread count); each slab is accumulated serially in
// index order and the partials are combined in slab order. The result is
// therefore bit-identical for any thread count, including a serial run, and
// every parallel kernel in the library has a naive serial reference
// implementation for cross-checking (see the benchmark target).

#include <cstdint>
#include <functional>
#include <vector>

namespace lab {

/// Caps the number of OpenMP threads used by the library (no-op without
/// OpenMP). 0 leaves the runtime default.
void set_max_threads(int threads);
int max_threads();

/// Splits [0, count) into n_slabs contiguous ranges and sums
/// slab_fn(begin, end) over them in fixed slab order. When `parallel` is
/// true and OpenMP is available the slabs are evaluated concurrently; the
/// combination order stays fixed, so results are independent of thread
/// count.
double slab_sum(std::int64_t count, int n_slabs,
                const std::function<double(std::int64_t, std::int64_t)>& slab_fn,
                bool parallel = true);

/// Default slab count used by the kernels.
inline constexpr int kDefaultSlabs = 64;

}  // namespace lab
