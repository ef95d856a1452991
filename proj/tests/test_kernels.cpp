#include <gtest/gtest.h>

#include <atomic>
#include <vector>

#include "qlab/kernels.hpp"
#include "qlab/quantale.hpp"
#include "qlab/workbench/generators.hpp"

using namespace qlab;

TEST(Kernels, ParallelScanMatchesSerial) {
  for (std::uint64_t count : {0ull, 1ull, 7ull, 1000ull, 65537ull}) {
    for (std::uint64_t mod : {1ull, 3ull, 97ull, 1000003ull}) {
      auto pred = [mod](std::uint64_t i) { return (i * 2654435761ull + 11) % mod == 0; };
      const auto s = kernels::serial::scan(count, pred);
      const auto p = kernels::omp::scan(count, pred);
      EXPECT_EQ(s.violations, p.violations) << count << " " << mod;
      EXPECT_EQ(s.first, p.first) << count << " " << mod;
    }
  }
}

TEST(Kernels, EmptyScanIsOk) {
  const auto r = kernels::scan(0, [](std::uint64_t) { return true; });
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.first, kernels::npos);
}

TEST(Kernels, ParallelForEachVisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(10000);
  kernels::for_each(hits.size(), [&](std::uint64_t i) { hits[i]++; }, kernels::Exec::parallel);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Kernels, TupleIndexDecodesLastCoordinateFastest) {
  kernels::TupleIndex<3> t{{2, 3, 4}};
  EXPECT_EQ(t.count(), 24u);
  std::uint32_t c[3];
  t.decode(23, c);
  EXPECT_EQ(c[0], 1u);
  EXPECT_EQ(c[1], 2u);
  EXPECT_EQ(c[2], 3u);
  t.decode(1, c);
  EXPECT_EQ(c[2], 1u);
}

TEST(Kernels, LibraryVerdictsDoNotDependOnExecution) {
  const auto rel = rel_quantale(2);
  auto run = [&](kernels::Exec e) {
    kernels::set_default_exec(e);
    const auto rep = is_groupoid_quantale(rel.based, &*rel.sigma, &*rel.upsilon);
    std::vector<std::uint64_t> v;
    for (const auto& c : rep.checks) v.push_back(c.violations);
    return v;
  };
  const auto serial = run(kernels::Exec::serial);
  const auto parallel = run(kernels::Exec::parallel);
  kernels::set_default_exec(kernels::Exec::serial);
  EXPECT_EQ(serial, parallel);
}
