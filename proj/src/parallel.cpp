#include "lab/parallel.hpp"

#include <algorithm>

#ifdef LAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace lab {

namespace {
int g_max_threads = 0;
}

void set_max_threads(int threads) {
  g_max_threads = threads;
#ifdef LAB_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

int max_threads() { return g_max_threads; }

double slab_sum(std::int64_t count, int n_slabs,
                const std::function<double(std::int64_t, std::int64_t)>& slab_fn,
                bool parallel) {
  if (count <= 0) return 0.0;
  n_slabs = static_cast<int>(std::min<std::int64_t>(n_slabs, count));
  if (n_slabs < 1) n_slabs = 1;
  std::vector<double> partial(static_cast<std::size_t>(n_slabs), 0.0);
  const std::int64_t chunk = (count + n_slabs - 1) / n_slabs;
#ifdef LAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int s = 0; s < n_slabs; ++s) {
    const std::int64_t b = static_cast<std::int64_t>(s) * chunk;
    const std::int64_t e = std::min(count, b + chunk);
    if (b < e) partial[static_cast<std::size_t>(s)] = slab_fn(b, e);
  }
  double total = 0.0;
  for (double p : partial) total += p;  // fixed combination order
  return total;
}

}  // namespace lab
