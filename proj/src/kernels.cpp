#include "qlab/kernels.hpp"

#include <atomic>

namespace qlab::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::serial};
}

Exec default_exec() noexcept { return g_exec.load(std::memory_order_relaxed); }

void set_default_exec(Exec exec) noexcept { g_exec.store(exec, std::memory_order_relaxed); }

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qlab::kernels
