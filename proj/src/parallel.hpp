#ifndef PSALINK_SRC_PARALLEL_HPP
#define PSALINK_SRC_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace psalink::detail {

/// Deterministic batched work loop.
///
/// Units are processed in fixed-size batches; within a batch workers claim
/// unit indices from an atomic counter and write results into preallocated
/// slots. The stop predicate only sees completed batches, in unit order, so
/// the set of processed units — and therefore every merged count — is
/// identical for any worker count.
///
/// UnitFn:  Result(std::size_t unit_index)
/// StopFn:  bool(const std::vector<Result>& all_results_so_far)
template <typename Result, typename UnitFn, typename StopFn>
std::vector<Result> run_batched(std::size_t batch_size, std::size_t max_units,
                                unsigned workers, UnitFn&& unit, StopFn&& stop) {
  std::vector<Result> results;
  if (workers == 0) workers = 1;
  std::size_t base = 0;
  while (base < max_units) {
    const std::size_t count = std::min(batch_size, max_units - base);
    results.resize(base + count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        results[base + i] = unit(base + i);
      }
    };
    if (workers == 1 || count == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    base += count;
    if (stop(results)) break;
  }
  return results;
}

}  // namespace psalink::detail

#endif
