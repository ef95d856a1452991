// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/groupoid.hpp"
#include "qlab/workbench/checks.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/oracles.hpp"

using namespace qlab;

namespace {

struct Failed {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const CheckRecord& record(const std::vector<CheckRecord>& rs, const std::string& check) {
  for (const auto& r : rs)
    if (r.check == check) return r;
  throw Failed{"no record for " + check};
}

std::string label_of(const Witness& w, const std::string& role) {
  for (const auto& e : w)
    if (e.role == role) return e.label;
  return "<missing " + role + ">";
}

Support support_of(const SupportedQuantale& q) {
  if (q.sigma) return check_support(q.based, *q.sigma);
  auto d = derive_support(q.based);
  if (auto* n = std::get_if<NoSupport>(&d)) throw Failed{"no support: " + n->reason};
  return std::get<Support>(d);
}

std::vector<CheckRecord> run_text(const std::string& text) { return run_checks(dsl::parse_spec(text)); }

// Unit laws hold on Q1; inverse laws fail at e with upsilon(e).1 = 1.
std::string unit_laws_without_inverse_laws() {
  const auto t0 = Clock::now();
  const auto rs = run_text("generate paperQ1 = paperQ1()\ncheck paperQ1 : unit-laws, inverse-laws");
  const double secs = seconds_since(t0);
  require(record(rs, "unit-laws").verdict() == "pass", "unit-laws did not pass");
  const auto& inv = record(rs, "inverse-laws");
  require(inv.verdict() == "fail", "inverse-laws did not fail");
  const auto& w = inv.result.witness;
  require(label_of(w, "a") == "e", "witness a = " + label_of(w, "a"));
  require(label_of(w, "υ(a)·1") == "1", "witness υ(a)·1 = " + label_of(w, "υ(a)·1"));
  require(label_of(w, "⋁{x | xx*≤a}") == "e", "witness join = " + label_of(w, "⋁{x | xx*≤a}"));
  require(secs < 1.0, "took " + std::to_string(secs) + " s");
  std::ostringstream o;
  o << "witness " << format_witness(w) << ", " << secs << " s";
  return o.str();
}

// Inverse laws hold on Q2; unit laws fail at a with join 0.
std::string inverse_laws_without_unit_laws() {
  const auto rs = run_text("generate paperQ2 = paperQ2()\ncheck paperQ2 : unit-laws, inverse-laws");
  require(record(rs, "inverse-laws").verdict() == "pass", "inverse-laws did not pass");
  const auto& unit = record(rs, "unit-laws");
  require(unit.verdict() == "fail", "unit-laws did not fail");
  const auto& w = unit.result.witness;
  require(label_of(w, "a") == "a", "witness a = " + label_of(w, "a"));
  require(label_of(w, "⋁{υ(x)·y | xy≤a}") == "0", "witness join = " + label_of(w, "⋁{υ(x)·y | xy≤a}"));
  return "witness " + format_witness(w);
}

// Rel(X) for |X| = 1, 2, 3: groupoid quantale, principal both ways, two-sided
// elements {0, X x X}, right-sided elements isomorphic to P(X).
std::string relations() {
  std::ostringstream o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto t0 = Clock::now();
    const auto rel = rel_quantale(n);
    const auto& b = rel.based;
    const auto rep = is_groupoid_quantale(b, &*rel.sigma, &*rel.upsilon);
    const std::string tag = "Rel(" + std::to_string(n) + ")";
    require(rep.quantal_frame && rep.equivariant_support && rep.reflexive && rep.multiplicative && rep.unit_laws &&
                rep.inverse_laws,
            tag + " flags");
    const auto p = check_principal(b, *rep.support);
    require(p.canonical_iso, tag + " R (x)_T L -> Q is not an isomorphism");
    require(p.cokernel_iso, tag + " cokernel pair is not Q");
    require(p.principal, tag + " not principal");
    require(p.sided.two_sided == std::vector<Elem>{b.zero(), b.one()}, tag + " two-sided elements");
    const Sublattice r = induced_sublattice(b.lattice(), p.sided.right);
    try {
      find_isomorphism(*r.lattice, *powerset_lattice(n));
    } catch (const Error&) {
      throw Failed{tag + " right-sided elements are not P(X)"};
    }
    const double secs = seconds_since(t0);
    if (n == 3) require(secs < 60.0, "Rel(3) took " + std::to_string(secs) + " s");
    o << tag << " " << secs << " s; ";
  }
  return o.str();
}

// Set partitions of {0..n-1}, blocks in order of least element.
void partitions(std::size_t n, std::size_t i, std::vector<std::vector<Elem>>& cur,
                std::vector<std::vector<std::vector<Elem>>>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t b = 0; b < cur.size(); ++b) {  // by index: the recursion grows cur
    cur[b].push_back(static_cast<Elem>(i));
    partitions(n, i + 1, cur, out);
    cur[b].pop_back();
  }
  cur.push_back({static_cast<Elem>(i)});
  partitions(n, i + 1, cur, out);
  cur.pop_back();
}

// G -> O(G) -> G(O(G)) and O(G) -> G(O(G)) -> O(G(O(G))), both with an
// isomorphism checked against every table.
std::string round_trips() {
  std::vector<std::pair<std::string, SetGroupoid>> gs = {
      {"trivial", pair_set_groupoid(1)},
      {"PAIR(2)", pair_set_groupoid(2)},
      {"PAIR(3)", pair_set_groupoid(3)},
      {"ZMOD2", cyclic_set_groupoid(2)},
  };
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::vector<Elem>> cur;
    std::vector<std::vector<std::vector<Elem>>> all;
    partitions(n, 0, cur, all);
    for (const auto& p : all) {
      std::string name = "partition";
      for (const auto& block : p) {
        name += "{";
        for (std::size_t k = 0; k < block.size(); ++k) name += (k ? "," : "") + std::to_string(block[k]);
        name += "}";
      }
      gs.emplace_back(name, partition_set_groupoid(p));
    }
  }
  for (const auto& [name, g] : gs) {
    const BuiltGroupoid b = compile(g);
    const GroupoidRoundTrip from_g = roundtrip_check(b.groupoid);
    require(is_groupoid_isomorphism(b.groupoid, from_g.groupoid.groupoid, from_g.iso), name + " groupoid side");
    const GroupoidQuantale q = quantale_from_groupoid(b.groupoid);
    const GroupoidRoundTrip from_q = roundtrip_check(q);
    require(is_based_isomorphism(q.based, from_q.quantale.based, from_q.iso), name + " quantale side");
  }
  return std::to_string(gs.size()) + " groupoids, both directions";
}

// equivariant => stable, retract stable and not equivariant, the stability
// forms agree, and the derived support is the unique equivariant one.
std::string support_hierarchy() {
  std::size_t supports = 0;
  for (const auto& [name, sq] : corpus_quantales(false)) {
    const auto all = enumerate_supports(sq.based);
    std::size_t equivariant = 0;
    for (const auto& s : all) {
      ++supports;
      require(!s.equivariant || s.stable, name + ": equivariant support that is not stable");
      const auto cls = classify_support(sq.based, s.sigma);
      require(cls.stable_forms[0] == cls.stable_forms[1] && cls.stable_forms[1] == cls.stable_forms[2],
              name + ": stability forms disagree");
      require(cls.stable == s.stable && cls.equivariant == s.equivariant, name + ": classification differs");
      equivariant += s.equivariant;
    }
    const auto d = derive_support(sq.based);
    if (const auto* s = std::get_if<Support>(&d)) {
      require(equivariant == 1, name + ": " + std::to_string(equivariant) + " equivariant supports");
      for (const auto& c : all)
        if (c.equivariant) require(c.sigma == s->sigma, name + ": derived support is not the enumerated one");
    } else {
      require(equivariant == 0, name + ": equivariant support exists but derivation failed");
    }
  }
  const auto r = retract_example();
  const Support s = check_support(r.based, *r.sigma);
  require(s.valid && s.stable && !s.equivariant, "retract support classification");
  return std::to_string(supports) + " supports classified";
}

// Inverse laws <=> partial units cover, inverse => unit; the unital support
// of Rel(2) is a1 ^ e = aa* ^ e.
std::string unital_laws() {
  std::size_t unital = 0;
  for (const auto& [name, sq] : corpus_quantales(true)) {
    if (!sq.based.quantale().unit() || !sq.upsilon) continue;
    ++unital;
    const FrameHom ups(*sq.upsilon);
    const bool inverse = check_inverse_laws(sq.based, ups).holds;
    const bool unit = check_unit_laws(sq.based, ups).holds;
    require(inverse == (partial_units(sq.based.quantale()).join == sq.based.one()), name + ": partial-unit cover");
    require(!inverse || unit, name + ": inverse laws without unit laws");
  }
  const auto rel = rel_quantale(2);
  const auto& b = rel.based;
  const auto u = unital_reflection(b, support_of(rel));
  const Elem e = *b.quantale().unit();
  for (Elem a = 0; a < b.size(); ++a) {
    require(u.sigma_e[a] == b.lattice().meet(b.mul(a, b.one()), e), "Rel(2) unital support is not a1 ^ e");
    require(u.sigma_e[a] == b.lattice().meet(b.mul(a, b.star(a)), e), "Rel(2) unital support is not aa* ^ e");
  }
  return std::to_string(unital) + " unital instances";
}

// The pair groupoid quantale of O(ZMOD2) is a groupoid quantale isomorphic
// to the quantale of the pair groupoid.
std::string pair_groupoid_of_group() {
  const GroupoidQuantale q = quantale_from_groupoid(compile(cyclic_set_groupoid(2)).groupoid);
  const PairGroupoid pg = pair_groupoid(q);
  require(pg.quantale.report.all(), "pair groupoid quantale fails a check");
  require(pg.from_groupoid.report.all(), "groupoid side fails a check");
  require(is_based_isomorphism(pg.quantale.based, pg.from_groupoid.based, pg.iso), "no isomorphism");
  return std::to_string(pg.carrier.size()) + " elements";
}

// Effective == principal on every corpus groupoid.
std::string effectiveness() {
  std::ostringstream o;
  for (const auto& [name, g] : corpus_groupoids()) {
    const auto e = check_effective_equivalence(compile(g).groupoid);
    require(e.effective == e.principal, name + ": effective and principal differ");
    if (name == "PAIR(2)") require(e.effective, "PAIR(2) is not effective");
    if (name == "ZMOD2") require(!e.effective, "ZMOD2 is effective");
    o << name << "=" << (e.effective ? "effective" : "not effective") << " ";
  }
  return o.str();
}

template <class A, class B>
bool same_sets(const A& t, const B& o) {
  std::vector<std::vector<std::uint8_t>> x, y(o.sets.begin(), o.sets.end());
  for (Elem e = 0; e < t.size(); ++e) x.push_back(t.pairs(e));
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

// Tensor products agree with the blind oracle.
std::string tensor_oracle_agreement() {
  const std::vector<std::pair<std::string, LatticePtr>> fs = {
      {"TWO", two_lattice()}, {"C3", chain_lattice(3)}, {"P(2)", powerset_lattice(2)}};
  for (const auto& [ln, l] : fs)
    for (const auto& [mn, m] : fs)
      require(same_sets(sup_tensor(l, m), tensor_oracle(l, m)), ln + " (x) " + mn);
  const auto q1 = example_q1();
  const auto act = q1.based.tensor_action();
  const auto& lq = q1.based.lattice_ptr();
  require(same_sets(tensor_over_base(lq, lq, act), tensor_oracle(lq, lq, act)), "Q1 (x)_A Q1");
  const auto p = sup_tensor(powerset_lattice(2), powerset_lattice(2));
  require(p.size() == 16, "P(2) (x) P(2) has " + std::to_string(p.size()) + " elements");
  try {
    find_isomorphism(p.carrier(), *powerset_lattice(4));
  } catch (const Error&) {
    throw Failed{"P(2) (x) P(2) is not P(2 x 2)"};
  }
  return "9 pairs plus Q1 over its base";
}

// Every lemma instance check on the full corpus, plus strong homs
// commuting with supports and the zero endomorphism that does not.
std::string lemma_properties() {
  std::uint64_t checks = 0;
  for (const auto& [name, sq] : corpus_quantales(true)) {
    std::optional<Support> s;
    if (sq.sigma) {
      s = check_support(sq.based, *sq.sigma);
    } else if (auto d = derive_support(sq.based); std::holds_alternative<Support>(d)) {
      s = std::get<Support>(d);
    }
    if (!s || !s->valid) continue;
    std::optional<ReflexiveStructure> r;
    if (sq.upsilon) {
      try {
        r = check_reflexive(sq.based, *sq.upsilon, &*s);
      } catch (const Error&) {
      }
    }
    for (const auto& c : lemma_checks(sq.based, *s, r ? &*r : nullptr)) {
      if (c.skipped) continue;
      ++checks;
      require(c.passed && c.violations == 0, name + ": " + c.name + " " + format_witness(c.witness));
    }
  }
  std::size_t strong = 0;
  bool zero_seen = false;
  const auto small = corpus_quantales(false);
  for (const auto& [sn, src] : small)
    for (const auto& [dn, dst] : small) {
      if (src.based.size() > 4 || dst.based.size() > 4) continue;
      const auto ss = derive_support(src.based);
      const auto ds = derive_support(dst.based);
      if (!std::holds_alternative<Support>(ss) || !std::holds_alternative<Support>(ds)) continue;
      const auto& sa = std::get<Support>(ss).sigma;
      const auto& da = std::get<Support>(ds).sigma;
      for (const auto& h : enumerate_homs(src.based, dst.based, &sa, &da)) {
        require(h.report.hom && h.report.support_commuting.has_value(), sn + " -> " + dn + ": report");
        if (h.report.strong) {
          ++strong;
          require(*h.report.support_commuting, sn + " -> " + dn + ": strong hom does not commute with supports");
        }
        if (sn == "TWO" && dn == "TWO" && h.f1 == std::vector<Elem>{0, 0}) {
          zero_seen = true;
          require(!*h.report.support_commuting, "zero endomorphism commutes with supports");
        }
      }
    }
  require(zero_seen, "zero endomorphism of TWO not enumerated");
  return std::to_string(checks) + " lemma checks, " + std::to_string(strong) + " strong homs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"unit laws without inverse laws", unit_laws_without_inverse_laws},
      {"inverse laws without unit laws", inverse_laws_without_unit_laws},
      {"relations on 1, 2, 3 points", relations},
      {"round trips", round_trips},
      {"support hierarchy", support_hierarchy},
      {"unital laws and partial units", unital_laws},
      {"pair groupoid of Z/2", pair_groupoid_of_group},
      {"effective iff principal", effectiveness},
      {"tensor oracle", tensor_oracle_agreement},
      {"lemma properties", lemma_properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string status = "PASS", detail;
    try {
      detail = criteria[i].second();
    } catch (const Failed& f) {
      status = "FAIL";
      detail = f.why;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    failed += status == "FAIL";
    std::printf("%s %zu %s: %s\n", status.c_str(), i + 1, criteria[i].first.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
