#pragma once

// Data-parallel scan kernels. Every exhaustive axiom check in the library is
// phrased as "count the indices in [0, count) that violate a predicate" and
// routed through scan(); the serial versions are the reference the OpenMP
// versions are tested against.

#include <cstdint>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlab::kernels {

enum class Exec { serial, parallel };

Exec default_exec() noexcept;
void set_default_exec(Exec exec) noexcept;
int max_threads() noexcept;

inline constexpr std::uint64_t npos = std::numeric_limits<std::uint64_t>::max();

struct ScanResult {
  std::uint64_t violations = 0;
  std::uint64_t first = npos;

  bool ok() const noexcept { return violations == 0; }
};

namespace serial {

template <class Pred>
ScanResult scan(std::uint64_t count, Pred&& violates) {
  ScanResult r;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (violates(i)) {
      if (r.violations == 0) r.first = i;
      ++r.violations;
    }
  }
  return r;
}

template <class Fn>
void for_each(std::uint64_t count, Fn&& fn) {
  for (std::uint64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace serial

namespace omp {

template <class Pred>
ScanResult scan(std::uint64_t count, Pred&& violates) {
  std::uint64_t violations = 0;
  std::uint64_t first = npos;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) reduction(+ : violations) reduction(min : first)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::uint64_t>(i);
    if (violates(u)) {
      ++violations;
      if (u < first) first = u;
    }
  }
  return {violations, first};
}

template <class Fn>
void for_each(std::uint64_t count, Fn&& fn) {
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::uint64_t>(i));
}

}  // namespace omp

template <class Pred>
ScanResult scan(std::uint64_t count, Pred&& violates, Exec exec = default_exec()) {
  if (exec == Exec::parallel) return omp::scan(count, std::forward<Pred>(violates));
  return serial::scan(count, std::forward<Pred>(violates));
}

/// fn(i) must only write state owned by index i.
template <class Fn>
void for_each(std::uint64_t count, Fn&& fn, Exec exec = default_exec()) {
  if (exec == Exec::parallel) {
    omp::for_each(count, std::forward<Fn>(fn));
  } else {
    serial::for_each(count, std::forward<Fn>(fn));
  }
}

/// Decodes a flat scan index into a tuple of coordinates, last one fastest.
template <std::size_t K>
struct TupleIndex {
  std::uint64_t extent[K];

  std::uint64_t count() const noexcept {
    std::uint64_t c = 1;
    for (auto e : extent) c *= e;
    return c;
  }

  void decode(std::uint64_t i, std::uint32_t (&out)[K]) const noexcept {
    for (std::size_t k = K; k-- > 0;) {
      out[k] = static_cast<std::uint32_t>(i % extent[k]);
      i /= extent[k];
    }
  }
};

}  // namespace qlab::kernels
