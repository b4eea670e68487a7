#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace credal {

enum class Execution { serial, parallel };

/// Number of worker threads the parallel kernels use (>= 1).
int worker_threads() noexcept;

/// Caps the parallel kernels at `threads` workers; 0 restores the runtime
/// default.
void set_worker_threads(int threads) noexcept;

/// Reads CREDAL_DIV_THREADS (0 or unset = auto) and applies it. Returns the
/// value that was applied. Throws InvalidArgument on a malformed value.
int apply_thread_limit_from_env();

/// Serial reference for map_indices: results[i] = fn(i) in index order.
template <class Fn>
auto map_indices_serial(std::size_t count, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  std::vector<std::invoke_result_t<Fn&, std::size_t>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

/// results[i] = fn(i), evaluated across OpenMP threads. fn must be safe to
/// call concurrently for distinct indices. The first exception by index is
/// rethrown after the loop, so error behavior matches the serial path.
template <class Fn>
auto map_indices(std::size_t count, Fn&& fn, Execution exec = Execution::parallel)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
#if defined(CREDAL_HAVE_OPENMP)
  if (exec == Execution::parallel && count > 1 && worker_threads() > 1) {
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_threads())
    for (long long i = 0; i < n; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(fn(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }
#else
  (void)exec;
#endif
  return map_indices_serial(count, fn);
}

/// Index of the largest element, lowest index on ties. `values` must be
/// nonempty and totally ordered.
template <class T>
std::size_t argmax_lowest(const std::vector<T>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[best] < values[i]) best = i;
  }
  return best;
}

}  // namespace credal
