#include "credal/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "credal/error.hpp"

#if defined(CREDAL_HAVE_OPENMP)
#include <omp.h>
#endif

namespace credal {
namespace {

std::atomic<int> g_thread_cap{0};

}  // namespace

int worker_threads() noexcept {
  const int cap = g_thread_cap.load(std::memory_order_relaxed);
#if defined(CREDAL_HAVE_OPENMP)
  return cap > 0 ? cap : omp_get_max_threads();
#else
  (void)cap;
  return 1;
#endif
}

void set_worker_threads(int threads) noexcept {
  g_thread_cap.store(threads > 0 ? threads : 0, std::memory_order_relaxed);
}

int apply_thread_limit_from_env() {
  const char* raw = std::getenv("CREDAL_DIV_THREADS");
  if (raw == nullptr || *raw == '\0') {
    set_worker_threads(0);
    return 0;
  }
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 0 || value > 4096) {
    fail(ErrorCode::InvalidArgument, std::string("CREDAL_DIV_THREADS must be a count >= 0, got '") +
                                         raw + "'");
  }
  set_worker_threads(static_cast<int>(value));
  return static_cast<int>(value);
}

}  // namespace credal
