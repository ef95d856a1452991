#include "qlab/workbench/oracles.hpp"

#include <string>

namespace qlab {
namespace {

std::uint64_t candidate_count(std::size_t base, std::size_t exponent, std::uint64_t limit, const char* what) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    c *= base;
    if (c > limit)
      throw Error(ErrorKind::SizeLimitExceeded,
                  std::string(what) + ": more than " + std::to_string(limit) + " candidate maps");
  }
  return c;
}

bool preserves_joins(const FinSupLattice& x, const FinSupLattice& y, const std::vector<Elem>& f) {
  if (f[x.bottom()] != y.bottom()) return false;
  for (Elem a = 0; a < x.size(); ++a)
    for (Elem b = a + 1; b < x.size(); ++b)
      if (f[x.join(a, b)] != y.join(f[a], f[b])) return false;
  return true;
}

bool preserves_meets(const FinSupLattice& x, const FinSupLattice& y, const std::vector<Elem>& f) {
  if (f[x.top()] != y.top()) return false;
  for (Elem a = 0; a < x.size(); ++a)
    for (Elem b = a + 1; b < x.size(); ++b)
      if (f[x.meet(a, b)] != y.meet(f[a], f[b])) return false;
  return true;
}

}  // namespace

std::vector<std::vector<Elem>> enumerate_join_maps(const FinSupLattice& x, const FinSupLattice& y,
                                                   std::uint64_t limit) {
  const auto jis = x.join_irreducibles();
  const std::uint64_t count = candidate_count(y.size(), jis.size(), limit, "join-map enumeration");
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> digits(jis.size(), 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = jis.size(); i-- > 0;) {
      digits[i] = static_cast<Elem>(rest % y.size());
      rest /= y.size();
    }
    std::vector<Elem> f(x.size());
    for (Elem e = 0; e < x.size(); ++e) {
      Elem acc = y.bottom();
      for (std::size_t i = 0; i < jis.size(); ++i)
        if (x.leq(jis[i], e)) acc = y.join(acc, digits[i]);
      f[e] = acc;
    }
    bool consistent = true;
    for (std::size_t i = 0; i < jis.size() && consistent; ++i) consistent = f[jis[i]] == digits[i];
    if (consistent && preserves_joins(x, y, f)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Support> enumerate_supports(const BasedQuantale& b, std::uint64_t limit) {
  std::vector<Support> out;
  for (auto& f : enumerate_join_maps(b.lattice(), b.base(), limit)) {
    Support s = check_support(b, std::move(f));
    if (s.valid) out.push_back(std::move(s));
  }
  return out;
}

std::vector<EnumeratedHom> enumerate_homs(const BasedQuantale& src, const BasedQuantale& dst, const JoinMap* sigma_src,
                                          const JoinMap* sigma_dst, std::uint64_t limit) {
  const auto& q = src.lattice();
  const auto& r = dst.lattice();
  std::vector<std::vector<Elem>> f1s;
  for (auto& f : enumerate_join_maps(q, r, limit)) {
    bool ok = true;
    for (Elem x = 0; x < q.size() && ok; ++x) {
      ok = f[src.star(x)] == dst.star(f[x]);
      for (Elem y = 0; y < q.size() && ok; ++y) ok = f[src.mul(x, y)] == dst.mul(f[x], f[y]);
    }
    if (ok) f1s.push_back(std::move(f));
  }
  std::vector<std::vector<Elem>> f0s;
  for (auto& f : enumerate_join_maps(src.base(), dst.base(), limit))
    if (preserves_meets(src.base(), dst.base(), f)) f0s.push_back(std::move(f));
  if (f1s.size() * f0s.size() > limit)
    throw Error(ErrorKind::SizeLimitExceeded, "hom enumeration: more than " + std::to_string(limit) + " candidate pairs");

  std::vector<EnumeratedHom> out;
  for (const auto& f1 : f1s)
    for (const auto& f0 : f0s) {
      HomReport h = check_based_hom(src, dst, f1, f0, sigma_src, sigma_dst);
      if (h.hom) out.push_back({f1, f0, std::move(h)});
    }
  return out;
}

}  // namespace qlab
