#include "qlab/workbench/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "qlab/check.hpp"

namespace qlab {

using dsl::fail_at;
using dsl::Name;

std::string_view to_string(EntryKind k) {
  switch (k) {
    case EntryKind::lattice: return "lattice";
    case EntryKind::frame: return "frame";
    case EntryKind::quantale: return "quantale";
    case EntryKind::based: return "based";
    case EntryKind::support: return "support";
    case EntryKind::upsilon: return "upsilon";
    case EntryKind::groupoid: return "groupoid";
  }
  return "?";
}

const Entry* Environment::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

Entry* Environment::find(std::string_view name) {
  return const_cast<Entry*>(std::as_const(*this).find(name));
}

// ---------------------------------------------------------------------------
// Building

namespace {

Elem elem_of(const FinSupLattice& l, const Name& n) {
  if (auto e = l.find(n.text)) return *e;
  fail_at(ErrorKind::UnresolvedName, n.span, "no element '" + n.text + "'");
}

// A table entry given twice must agree with itself.
void set_cell(std::vector<Elem>& table, std::vector<std::uint8_t>& set, std::size_t i, Elem v, const Name& at) {
  if (set[i] && table[i] != v) fail_at(ErrorKind::BadTable, at.span, "conflicting entries for the same cell");
  table[i] = v;
  set[i] = 1;
}

std::vector<Elem> unary_table(const FinSupLattice& src, const FinSupLattice& dst, const std::vector<dsl::Arrow1>& rows,
                              std::optional<std::vector<Elem>> fallback = std::nullopt) {
  std::vector<Elem> t = fallback ? std::move(*fallback) : std::vector<Elem>(src.size(), dst.bottom());
  std::vector<std::uint8_t> set(src.size());
  for (const auto& a : rows) set_cell(t, set, elem_of(src, a.from), elem_of(dst, a.to), a.from);
  return t;
}

std::vector<Elem> binary_table(const FinSupLattice& l, const FinSupLattice& r, const FinSupLattice& out,
                               const std::vector<dsl::Arrow2>& rows) {
  std::vector<Elem> t(l.size() * r.size(), out.bottom());
  std::vector<std::uint8_t> set(t.size());
  for (const auto& a : rows)
    set_cell(t, set, static_cast<std::size_t>(elem_of(l, a.left)) * r.size() + elem_of(r, a.right),
             elem_of(out, a.to), a.left);
  return t;
}

const Entry& dependency(const Environment& env, const Name& n) {
  const Entry* e = env.find(n.text);
  if (!e) fail_at(ErrorKind::UnresolvedName, n.span, "unknown structure '" + n.text + "'");
  if (e->failure) fail_at(e->failure->kind(), n.span, "'" + n.text + "' failed to build");
  return *e;
}

Frame frame_of(const Entry& e, const Name& at) {
  auto r = check_frame(e.lattice);
  if (auto* w = std::get_if<DistributivityWitness>(&r)) {
    const auto& l = *e.lattice;
    throw Error(ErrorKind::NotAFrame,
                std::to_string(at.span.line) + ":" + std::to_string(at.span.col) + ": '" + at.text +
                    "' is not distributive",
                {{"x", l.label(w->x)}, {"y", l.label(w->y)}, {"z", l.label(w->z)}});
  }
  return std::get<Frame>(std::move(r));
}

long long number(const dsl::GenArg& a) {
  if (!a.number) fail_at(ErrorKind::SyntaxError, a.span, "expected a number");
  return *a.number;
}

std::vector<std::vector<Elem>> matrix(const dsl::GenArg& a) {
  if (a.number) fail_at(ErrorKind::SyntaxError, a.span, "expected a list of lists");
  std::vector<std::vector<Elem>> out;
  for (const auto& row : a.list) {
    if (row.number) fail_at(ErrorKind::SyntaxError, row.span, "expected a list");
    auto& r = out.emplace_back();
    for (const auto& x : row.list) {
      const long long v = number(x);
      if (v < 0) fail_at(ErrorKind::BadTable, x.span, "negative entry");
      r.push_back(static_cast<Elem>(v));
    }
  }
  return out;
}

void arity(const dsl::GenerateDecl& d, std::size_t n) {
  if (d.args.size() != n)
    fail_at(ErrorKind::SyntaxError, d.generator.span,
            d.generator.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
}

std::size_t small_count(const dsl::GenArg& a, long long max) {
  const long long v = number(a);
  if (v < 1 || v > max)
    fail_at(ErrorKind::SizeLimitExceeded, a.span, "argument must lie in 1.." + std::to_string(max));
  return static_cast<std::size_t>(v);
}

// Blocks may use any distinct labels; points are renumbered in sorted order.
SetGroupoid partition_from(const dsl::GenArg& a) {
  auto blocks = matrix(a);
  std::vector<Elem> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    fail_at(ErrorKind::BadGroupTable, a.span, "blocks overlap");
  for (auto& b : blocks)
    for (auto& x : b) x = static_cast<Elem>(std::lower_bound(all.begin(), all.end(), x) - all.begin());
  return partition_set_groupoid(blocks);
}

void build_generated(Entry& e, const dsl::GenerateDecl& d, const Limits& limits) {
  const std::string& g = d.generator.text;
  for (const auto& info : dsl::generators())
    if (info.name == g)
      e.kind = info.kind == "frame" ? EntryKind::frame : info.kind == "based" ? EntryKind::based : EntryKind::groupoid;
  auto groupoid = [&](SetGroupoid sg) {
    e.kind = EntryKind::groupoid;
    e.groupoid = compile(sg, kMaterializePairs);
    e.lattice = e.groupoid->groupoid.arrows.ptr();
    e.set_groupoid = std::move(sg);
  };
  auto based = [&](SupportedQuantale q) {
    e.kind = EntryKind::based;
    e.lattice = q.based.lattice_ptr();
    e.based = std::move(q);
  };
  if (g == "powerset" || g == "chain") {
    arity(d, 1);
    e.kind = EntryKind::frame;
    e.lattice = g == "powerset" ? powerset_lattice(small_count(d.args[0], 12))
                                : chain_lattice(small_count(d.args[0], static_cast<long long>(limits.lattice)));
  } else if (g == "two") {
    arity(d, 0);
    based(two_quantale());
  } else if (g == "rel") {
    arity(d, 1);
    based(rel_quantale(small_count(d.args[0], 3)));
  } else if (g == "retract") {
    arity(d, 1);
    based(retract_example(small_count(d.args[0], 12)));
  } else if (g == "paperQ1") {
    arity(d, 0);
    based(example_q1());
  } else if (g == "paperQ2") {
    arity(d, 0);
    based(example_q2());
  } else if (g == "pairgroupoid") {
    arity(d, 1);
    groupoid(pair_set_groupoid(small_count(d.args[0], 3)));
  } else if (g == "groupgroupoid") {
    arity(d, 1);
    groupoid(group_set_groupoid(matrix(d.args[0])));
  } else if (g == "zmod") {
    arity(d, 1);
    groupoid(cyclic_set_groupoid(small_count(d.args[0], static_cast<long long>(kMaxSetPoints))));
  } else if (g == "partition") {
    arity(d, 1);
    groupoid(partition_from(d.args[0]));
  } else if (g == "trivial") {
    arity(d, 0);
    groupoid(pair_set_groupoid(1));
  } else {
    fail_at(ErrorKind::UnresolvedName, d.generator.span, "unknown generator '" + g + "'");
  }
}

struct Builder {
  Environment& env;
  const Limits& limits;
  Entry& e;

  void operator()(const dsl::LatticeDecl& d) {
    e.kind = EntryKind::lattice;
    std::vector<std::string> labels;
    for (const auto& n : d.elems) labels.push_back(n.text);
    if (labels.size() > limits.lattice)
      fail_at(ErrorKind::SizeLimitExceeded, d.name.span, "more than " + std::to_string(limits.lattice) + " elements");
    std::map<std::string, Elem> index;
    for (Elem i = 0; i < labels.size(); ++i) index[labels[i]] = i;
    std::vector<std::pair<Elem, Elem>> order;
    for (const auto& a : d.order) {
      auto find = [&](const Name& n) {
        auto it = index.find(n.text);
        if (it == index.end()) fail_at(ErrorKind::UnresolvedName, n.span, "no element '" + n.text + "'");
        return it->second;
      };
      order.emplace_back(find(a.from), find(a.to));
    }
    const std::size_t n = labels.size();
    e.lattice = FinSupLattice::from_order(n, order, std::move(labels));
  }

  void operator()(const dsl::FrameDecl& d) {
    e.kind = EntryKind::frame;
    e.lattice = frame_of(dependency(env, d.lattice), d.lattice).ptr();
  }

  void operator()(const dsl::QuantaleDecl& d) {
    e.kind = EntryKind::quantale;
    const LatticePtr l = dependency(env, d.lattice).lattice;
    std::vector<Elem> id(l->size());
    for (Elem x = 0; x < l->size(); ++x) id[x] = x;
    auto mult = binary_table(*l, *l, *l, d.mult);
    auto inv = unary_table(*l, *l, d.inv, std::move(id));
    std::optional<Elem> unit;
    if (d.unit) unit = elem_of(*l, *d.unit);
    e.lattice = l;
    e.quantale = Quantale::build(l, std::move(mult), std::move(inv), unit);
  }

  void operator()(const dsl::BasedDecl& d) {
    e.kind = EntryKind::based;
    const Quantale q = *dependency(env, d.quantale).quantale;
    const Frame a = frame_of(dependency(env, d.frame), d.frame);
    auto lact = binary_table(a.lattice(), q.lattice(), q.lattice(), d.lact);
    auto ract = binary_table(q.lattice(), a.lattice(), q.lattice(), d.ract);
    e.lattice = q.lattice_ptr();
    e.based = SupportedQuantale{BasedQuantale::build(q, a.ptr(), std::move(lact), std::move(ract)), std::nullopt,
                                std::nullopt};
  }

  void operator()(const dsl::MapDecl& d) {
    const bool support = d.kind == dsl::MapDecl::Kind::support;
    e.kind = support ? EntryKind::support : EntryKind::upsilon;
    e.target = d.based.text;
    dependency(env, d.based);
    Entry& target = *env.find(d.based.text);
    const BasedQuantale& b = target.based->based;
    auto values = unary_table(b.lattice(), b.base(), d.values);
    e.lattice = b.lattice_ptr();
    if (support) {
      target.based->sigma = build_join_map(b.lattice_ptr(), b.base_ptr(), std::move(values));
      e.based = SupportedQuantale{b, target.based->sigma, std::nullopt};
    } else {
      target.based->upsilon = Map(b.lattice_ptr(), b.base_ptr(), std::move(values));
      e.based = SupportedQuantale{b, std::nullopt, target.based->upsilon};
    }
  }

  void operator()(const dsl::GroupoidDecl& d) {
    e.kind = EntryKind::groupoid;
    Frame o0 = frame_of(dependency(env, d.objects), d.objects);
    Frame o1 = frame_of(dependency(env, d.arrows), d.arrows);
    const auto& l0 = o0.lattice();
    const auto& l1 = o1.lattice();
    auto hom = [](const LatticePtr& s, const LatticePtr& t, std::vector<Elem> v) {
      return FrameHom(Map(s, t, std::move(v)));
    };
    FrameHom dstar = hom(o0.ptr(), o1.ptr(), unary_table(l0, l1, d.dstar));
    FrameHom rstar = hom(o0.ptr(), o1.ptr(), unary_table(l0, l1, d.rstar));
    FrameHom ustar = hom(o1.ptr(), o0.ptr(), unary_table(l1, l0, d.ustar));
    FrameHom istar = hom(o1.ptr(), o1.ptr(), unary_table(l1, l1, d.istar));
    if (!d.mstar) fail_at(ErrorKind::DiagramFailure, d.name.span, "a groupoid given by frames needs mstar");
    const auto space = composable_pairs(dstar, rstar);
    std::vector<Rows> mstar(l1.size(), space->bottom());
    std::vector<std::uint8_t> set(l1.size());
    for (const auto& m : *d.mstar) {
      const Elem w = elem_of(l1, m.arrow);
      Rows r = space->bottom();
      for (const auto& t : m.join) r = space->join(r, space->pure(elem_of(l1, t.left), elem_of(l1, t.right)));
      if (set[w] && mstar[w] != r) fail_at(ErrorKind::BadTable, m.arrow.span, "conflicting mstar entries");
      set[w] = 1;
      mstar[w] = std::move(r);
    }
    if (!set[l1.top()]) mstar[l1.top()] = space->top();  // m*(1) = 1 need not be written out
    e.lattice = o1.ptr();
    e.groupoid = build_localic_groupoid(std::move(o0), std::move(o1), std::move(dstar), std::move(rstar),
                                        std::move(ustar), std::move(istar), std::move(mstar), kMaterializePairs);
  }

  void operator()(const dsl::GenerateDecl& d) { build_generated(e, d, limits); }

  void operator()(const dsl::CheckDecl&) {}
};

}  // namespace

Environment build_environment(const dsl::SpecDocument& doc, const Limits& limits) {
  Environment env;
  for (const auto& d : doc.decls) {
    if (std::holds_alternative<dsl::CheckDecl>(d)) continue;
    Entry e;
    e.name = dsl::decl_name(d).text;
    e.span = dsl::decl_name(d).span;
    env.entries.push_back(std::move(e));
    Entry& cur = env.entries.back();
    try {
      std::visit(Builder{env, limits, cur}, d);
    } catch (const Error& err) {
      cur.failure = err;
    } catch (const std::exception& err) {
      cur.failure = Error(ErrorKind::BadTable, err.what());
    }
  }
  return env;
}

// ---------------------------------------------------------------------------
// Check catalog

namespace {

const std::map<std::string, std::string, std::less<>>& citations() {
  static const std::map<std::string, std::string, std::less<>> c = {
      {"build", "declaration builds: its tables satisfy the axioms of their kind"},
      {"lattice-laws", "partial order with all binary joins and meets"},
      {"frame-law", "frame distributivity: x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)"},
      {"quantale-laws", "involutive quantale: associative, bilinear, (xy)* = y*x*, x** = x"},
      {"unital", "two-sided multiplicative unit exists"},
      {"quantal-frame", "quantal frame: Q is a frame and the actions commute with binary meets"},
      {"support-axioms", "support axioms: ς(1) = 1, ς(x)·y ≤ xx*y, ς(x)·x = x"},
      {"stable", "stable support: ς(xy) ≤ ς(x)"},
      {"equivariant", "equivariant support: ς(a·x) = a ∧ ς(x)"},
      {"stability-forms-agree", "stability forms agree: ς(xy) ≤ ς(x), ς(x·1) = ς(x), ς(xy) = ς(x·ς(y))"},
      {"equivariant-implies-stable", "every equivariant support is stable"},
      {"derived-support", "an equivariant support is the left adjoint of a ↦ a·1"},
      {"support-uniqueness", "a quantale has at most one equivariant support"},
      {"reflexive", "reflexive structure: υ is a frame homomorphism with υ(a·1) = a = υ(1·a)"},
      {"multiplicative", "multiplicativity: the right adjoint of Q ⊗_A Q → Q preserves joins"},
      {"unit-laws", "unit laws: ⋁{υ(x)·y | xy ≤ a} = a"},
      {"inverse-laws", "inverse laws: υ(a)·1 = ⋁{x | xx* ≤ a}"},
      {"groupoid-quantale",
       "groupoid quantale: multiplicative, equivariantly supported, reflexive quantal frame with unit and inverse laws"},
      {"inverse-quantal-frame", "inverse quantal frame: the partial units join to 1"},
      {"inverse-laws-iff-partial-units-cover", "unital case: inverse laws hold iff the partial units join to 1"},
      {"inverse-laws-imply-unit-laws", "unital case: the inverse laws imply the unit laws"},
      {"unital-reflection", "unital reflection: ς_e(a) = ς(a)·e = a1 ∧ e = aa* ∧ e"},
      {"principal", "principal quantale: Q ≅ ℛ(Q) ⊗_𝒯(Q) ℒ(Q), equivalently the cokernel-pair condition"},
      {"roundtrip", "groupoids and groupoid quantales correspond: 𝒢(𝒪(G)) ≅ G and 𝒪(𝒢(Q)) ≅ Q"},
      {"pair-groupoid", "the pair groupoid of the arrow locale has quantale Q ⊗_A Q"},
      {"groupoid-diagrams", "every localic groupoid diagram commutes"},
      {"etale", "étale groupoid: the unit map is open"},
      {"quantale", "𝒪(G) with m_!, i_!, d_! and u* is a groupoid quantale"},
      {"effective", "effective equivalence relation: G is the kernel pair of the coequalizer of d and r"},
      {"effective-iff-principal", "G is an effective equivalence relation iff 𝒪(G) is principal"},
      // groupoid diagrams
      {"involution-involutive", "groupoid diagram: i ∘ i = id"},
      {"inverse-swaps-domain-range", "groupoid diagram: d ∘ i = r and r ∘ i = d"},
      {"inverse-fixes-units", "groupoid diagram: i ∘ u = u"},
      {"unit-domain-section", "groupoid diagram: d ∘ u = id"},
      {"unit-range-section", "groupoid diagram: r ∘ u = id"},
      {"domain-open", "open groupoid: d is an open map"},
      {"multiplication-frame-hom", "m* is a frame homomorphism into the composable pairs"},
      {"multiplication-domain", "groupoid diagram: d ∘ m = d ∘ π₁"},
      {"multiplication-range", "groupoid diagram: r ∘ m = r ∘ π₂"},
      {"left-unit-law", "groupoid diagram: m ∘ ⟨u ∘ d, id⟩ = id"},
      {"right-unit-law", "groupoid diagram: m ∘ ⟨id, u ∘ r⟩ = id"},
      {"right-inverse-law", "groupoid diagram: m ∘ ⟨id, i⟩ = u ∘ d"},
      {"left-inverse-law", "groupoid diagram: m ∘ ⟨i, id⟩ = u ∘ r"},
      {"multiplication-involution", "groupoid diagram: i ∘ m = m ∘ ⟨i ∘ π₂, i ∘ π₁⟩"},
      {"associativity", "groupoid diagram: m ∘ (m × id) = m ∘ (id × m)"},
      // support and restriction lemmas
      {"support-unit", "support axiom: ς(1) = 1"},
      {"support-bound", "support axiom: ς(x)·y ≤ xx*y"},
      {"support-restricts", "support axiom: ς(x)·x = x"},
      {"involution-of-restriction", "support lemma: (ς(x)·y)* = y*·ς(x)"},
      {"right-restriction-bound", "support lemma: y·ς(x) ≤ yxx*"},
      {"strongly-gelfand", "support lemma: x ≤ xx*x"},
      {"below-right-closure", "support lemma: x ≤ x1"},
      {"top-idempotent", "support lemma: 1·1 = 1"},
      {"support-of-right-closure", "support lemma: ς(x1)·1 = x1"},
      {"right-sided-retraction", "support lemma: ς(x)·1 = x for right-sided x"},
      {"right-support", "support lemma: x·ς(x*) = x"},
      {"adjoint-candidate", "equivariant support is left adjoint to a ↦ a·1"},
      {"two-sided-self-adjoint", "two-sided elements are self-adjoint"},
      {"right-sided-iso", "a ↦ a·1 is an order isomorphism from A onto the right-sided elements, inverse to ς"},
      {"support-characterization", "ς(x) is the only a with a·x = x and a·1 ≤ x1"},
      {"support-meet-right-sided", "for right-sided x: ς(x ∧ y) = ς(x) ∧ ς(y)"},
      {"restriction-hom", "a ↦ a·e is multiplicative: (a ∧ b)·e = (a·e)(b·e)"},
      {"unital-support-below-unit", "unital support: ς(x)·e ≤ e"},
      {"unital-support-below-xx*", "unital support: ς(x)·e ≤ xx*"},
      {"unital-support-restricts", "unital support: x ≤ (ς(x)·e)x"},
      {"unital-support-formulas", "unital support: ς(x)·e = x1 ∧ e = xx* ∧ e"},
      {"stable-frame-identities", "stable quantal frame: the joins of x ∧ y with xy* ≤ a, and of x with xx* ≤ a, lie below (a ∧ e)1"},
      {"upsilon-support", "reflexive lemma: υ(x1) = ς(x)"},
      {"upsilon-equivariant", "reflexive lemma: υ(b·x1) = b ∧ υ(x1)"},
  };
  return c;
}

const std::vector<std::string> kBasedChecks = {
    "quantal-frame", "support-axioms", "stable", "equivariant", "stability-forms-agree",
    "equivariant-implies-stable", "derived-support", "support-uniqueness", "reflexive", "multiplicative",
    "unit-laws", "inverse-laws", "groupoid-quantale", "inverse-quantal-frame", "inverse-laws-iff-partial-units-cover",
    "inverse-laws-imply-unit-laws", "unital-reflection", "principal", "lemmas", "roundtrip", "pair-groupoid"};

const std::vector<std::string> kDiagrams = {
    "involution-involutive", "inverse-swaps-domain-range", "inverse-fixes-units", "unit-domain-section",
    "unit-range-section", "domain-open", "multiplication-frame-hom", "multiplication-domain", "multiplication-range",
    "left-unit-law", "right-unit-law", "right-inverse-law", "left-inverse-law", "multiplication-involution",
    "associativity"};

bool is_diagram(std::string_view n) { return std::find(kDiagrams.begin(), kDiagrams.end(), n) != kDiagrams.end(); }

}  // namespace

const std::vector<std::string>& check_names(EntryKind kind) {
  static const std::vector<std::string> lattice = {"lattice-laws"};
  static const std::vector<std::string> frame = {"lattice-laws", "frame-law"};
  static const std::vector<std::string> quantale = {"quantale-laws", "unital", "inverse-quantal-frame"};
  static const std::vector<std::string> support = {"support-axioms", "stable", "equivariant", "stability-forms-agree"};
  static const std::vector<std::string> upsilon = {"reflexive"};
  static const std::vector<std::string> groupoid = [] {
    std::vector<std::string> v = {"diagrams", "groupoid-diagrams", "etale", "quantale", "roundtrip", "effective",
                                  "effective-iff-principal"};
    return v;
  }();
  switch (kind) {
    case EntryKind::lattice: return lattice;
    case EntryKind::frame: return frame;
    case EntryKind::quantale: return quantale;
    case EntryKind::based: return kBasedChecks;
    case EntryKind::support: return support;
    case EntryKind::upsilon: return upsilon;
    case EntryKind::groupoid: return groupoid;
  }
  return lattice;
}

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> g = {"all", "build", "lemmas", "diagrams"};
  return g;
}

std::string citation(std::string_view check) {
  const auto& c = citations();
  if (auto it = c.find(check); it != c.end()) return it->second;
  return "instance check: " + std::string(check);
}

std::string CheckRecord::verdict() const {
  if (result.skipped) return result.note.rfind("size", 0) == 0 ? "skipped(size)" : "skipped(hypothesis)";
  return result.passed ? "pass" : "fail";
}

bool CheckRecord::as_expected() const {
  if (result.skipped) return !expected || *expected;
  return result.passed == expected.value_or(true);
}

bool all_as_expected(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.as_expected(); });
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

CheckResult size_skip(std::string name, const std::string& why) { return skipped_check(std::move(name), "size: " + why); }

CheckResult hypothesis_skip(std::string name, const std::string& why) { return skipped_check(std::move(name), why); }

CheckResult from_error(std::string name, const Error& e) {
  if (e.kind() == ErrorKind::SizeLimitExceeded) return size_skip(std::move(name), e.what());
  Witness w = e.witness();
  w.insert(w.begin(), {"error", e.what()});
  return flag_check(std::move(name), false, std::move(w));
}

const CheckResult* find_check(const std::vector<CheckResult>& cs, std::string_view name) {
  for (const auto& c : cs)
    if (c.name == name) return &c;
  return nullptr;
}

Witness first_failure(const std::vector<CheckResult>& cs) {
  for (const auto& c : cs)
    if (!c.passed && !c.skipped) {
      Witness w = {{"check", c.name}};
      w.insert(w.end(), c.witness.begin(), c.witness.end());
      return w;
    }
  return {};
}

// Lazily computed facts about one based quantale, shared by its checks.
class BasedContext {
 public:
  BasedContext(const SupportedQuantale& q, const Limits& limits) : q_(q), b_(q.based), limits_(limits) {}

  // The declared support, or the derived one when none was declared.
  const std::variant<Support, NoSupport>& support() {
    if (!support_) {
      if (q_.sigma) support_ = check_support(b_, *q_.sigma);
      else support_ = derive_support(b_);
    }
    return *support_;
  }
  const Support* valid_support() {
    auto* s = std::get_if<Support>(&support());
    return s && s->valid ? s : nullptr;
  }
  const std::variant<Support, NoSupport>& derived() {
    if (!derived_) derived_ = derive_support(b_);
    return *derived_;
  }
  const GroupoidQuantaleReport& report() {
    if (!report_) report_ = is_groupoid_quantale(b_, q_.sigma ? &*q_.sigma : nullptr, q_.upsilon ? &*q_.upsilon : nullptr);
    return *report_;
  }
  const ReflexiveStructure* reflexive() {
    if (!q_.upsilon) return nullptr;
    if (!reflexive_) {
      try {
        reflexive_ = check_reflexive(b_, *q_.upsilon, valid_support());
      } catch (const Error&) {
        reflexive_failed_ = true;
      }
      if (reflexive_failed_) return nullptr;
    }
    return reflexive_ ? &*reflexive_ : nullptr;
  }
  const GroupoidQuantale& certified() {
    if (!certified_) {
      if (!q_.upsilon) throw Error(ErrorKind::NotReflexive, "no upsilon declared");
      certified_ = certify_groupoid_quantale(b_, q_.sigma ? &*q_.sigma : nullptr, *q_.upsilon);
    }
    return *certified_;
  }

  void run(const std::string& name, std::vector<CheckResult>& out) {
    const auto& l = b_.lattice();
    if (l.size() > limits_.quantale_scan || l.size() > limits_.lattice || b_.base().size() > limits_.lattice) {
      out.push_back(size_skip(name, "|Q| = " + std::to_string(l.size()) + " exceeds the scan limit"));
      return;
    }
    if (name == "lemmas") {
      const Support* s = valid_support();
      if (!s) {
        out.push_back(hypothesis_skip(name, "needs a valid support"));
        return;
      }
      for (auto& c : lemma_checks(b_, *s, reflexive())) out.push_back(std::move(c));
      return;
    }
    out.push_back(one(name));
  }

 private:
  CheckResult one(const std::string& name) {
    if (name == "quantal-frame")
      return flag_check(name, b_.is_quantal_frame(), b_.quantal_frame_witness().value_or(Witness{}));
    if (name == "support-axioms") {
      if (auto* n = std::get_if<NoSupport>(&support())) return flag_check(name, false, n->witness, n->reason);
      const auto& s = std::get<Support>(support());
      return flag_check(name, s.valid, first_failure(s.checks));
    }
    if (name == "stable" || name == "equivariant") {
      const Support* s = valid_support();
      if (!s) return hypothesis_skip(name, "needs a valid support");
      const SupportClass c = classify_support(b_, s->sigma);
      return name == "stable" ? flag_check(name, c.stable, c.stable_witness)
                              : flag_check(name, c.equivariant, c.equivariance_witness);
    }
    if (name == "stability-forms-agree" || name == "equivariant-implies-stable") {
      const Support* s = valid_support();
      if (!s) return hypothesis_skip(name, "needs a valid support");
      if (const auto* c = find_check(s->checks, name)) return *c;
      return hypothesis_skip(name, "not evaluated for this support");
    }
    if (name == "derived-support") {
      const auto& d = derived();
      if (auto* n = std::get_if<NoSupport>(&d)) return flag_check(name, false, n->witness, n->reason);
      const Support& got = std::get<Support>(d);
      const Support* given = q_.sigma ? valid_support() : nullptr;
      if (given && given->equivariant && given->sigma != got.sigma)
        return flag_check(name, false, {{"declared", "σ"}, {"derived", "differs"}});
      return flag_check(name, true);
    }
    if (name == "support-uniqueness") {
      const auto all = enumerate_supports(b_, limits_.enumeration);
      std::vector<const Support*> eq;
      for (const auto& s : all)
        if (s.equivariant) eq.push_back(&s);
      const auto* d = std::get_if<Support>(&derived());
      const bool ok = d ? eq.size() == 1 && eq.front()->sigma == d->sigma : eq.empty();
      return flag_check(name, ok, {{"equivariant supports", std::to_string(eq.size())},
                                   {"derived", d ? "yes" : "no"}},
                        std::to_string(all.size()) + " valid supports enumerated");
    }
    if (name == "reflexive" || name == "unit-laws" || name == "inverse-laws") {
      if (!q_.upsilon) return hypothesis_skip(name, "no upsilon declared");
      return *find_check(report().checks, name);
    }
    if (name == "multiplicative") return *find_check(report().checks, name);
    if (name == "inverse-laws-iff-partial-units-cover" || name == "inverse-laws-imply-unit-laws") {
      if (!b_.quantale().unit()) return hypothesis_skip(name, "not unital");
      if (!q_.upsilon) return hypothesis_skip(name, "no upsilon declared");
      return *find_check(report().checks, name);
    }
    if (name == "groupoid-quantale") {
      if (!q_.upsilon) return hypothesis_skip(name, "no upsilon declared");
      return flag_check(name, report().all(), first_failure(report().checks));
    }
    if (name == "inverse-quantal-frame") {
      if (!b_.quantale().unit()) return hypothesis_skip(name, "not unital");
      const PartialUnits p = partial_units(b_.quantale());
      return flag_check(name, p.inverse_quantal_frame, {{"⋁ℐ(Q)", b_.lattice().label(p.join)}});
    }
    if (name == "unital-reflection") {
      if (!b_.quantale().unit()) return hypothesis_skip(name, "not unital");
      const Support* s = valid_support();
      if (!s) return hypothesis_skip(name, "needs a valid support");
      const UnitalReflection u = unital_reflection(b_, *s);
      return flag_check(name, u.ok(), first_failure(u.checks));
    }
    if (name == "principal") {
      const Support* s = valid_support();
      if (!s || !s->equivariant || !b_.is_quantal_frame())
        return hypothesis_skip(name, "needs an equivariantly supported quantal frame");
      const PrincipalityReport p = check_principal(b_, *s, limits_.tensor);
      return flag_check(name, p.principal, p.witness);
    }
    if (name == "roundtrip") {
      if (!q_.upsilon) return hypothesis_skip(name, "no upsilon declared");
      if (!report().all()) return hypothesis_skip(name, "not a groupoid quantale");
      const GroupoidRoundTrip rt = roundtrip_check(certified());
      return flag_check(name, true, {}, "isomorphism on " + std::to_string(rt.iso.carrier.size()) + " + " +
                                            std::to_string(rt.iso.base.size()) + " elements");
    }
    if (name == "pair-groupoid") {
      if (!q_.upsilon) return hypothesis_skip(name, "no upsilon declared");
      if (!report().all()) return hypothesis_skip(name, "not a groupoid quantale");
      const PairGroupoid pg = pair_groupoid(certified(), limits_.tensor);
      return flag_check(name, pg.quantale.report.all(), first_failure(pg.quantale.report.checks),
                        "Q ⊗_A Q has " + std::to_string(pg.carrier.size()) + " elements");
    }
    // Individual lemma names.
    const Support* s = valid_support();
    if (!s) return hypothesis_skip(name, "needs a valid support");
    for (auto& c : lemma_checks(b_, *s, reflexive()))
      if (c.name == name) return c;
    return hypothesis_skip(name, "not applicable to a based quantale");
  }

  const SupportedQuantale& q_;
  const BasedQuantale& b_;
  const Limits& limits_;
  std::optional<std::variant<Support, NoSupport>> support_;
  std::optional<std::variant<Support, NoSupport>> derived_;
  std::optional<GroupoidQuantaleReport> report_;
  std::optional<ReflexiveStructure> reflexive_;
  bool reflexive_failed_ = false;
  std::optional<GroupoidQuantale> certified_;
};

void run_groupoid(const BuiltGroupoid& g, const Limits& limits, const std::string& name, std::vector<CheckResult>& out) {
  if (g.groupoid.o1().size() > limits.lattice) {
    out.push_back(size_skip(name, "|O1| exceeds the lattice limit"));
    return;
  }
  if (name == "diagrams") {
    for (const auto& c : g.report.diagrams) out.push_back(c);
    return;
  }
  if (is_diagram(name)) {
    const CheckResult* c = g.report.find(name);
    out.push_back(c ? *c : hypothesis_skip(name, "not evaluated"));
    return;
  }
  if (name == "groupoid-diagrams") {
    out.push_back(flag_check(name, g.report.ok(), first_failure(g.report.diagrams)));
  } else if (name == "etale") {
    out.push_back(flag_check(name, is_etale(g.groupoid), {{"u*", "not open"}}));
  } else if (name == "quantale") {
    const GroupoidQuantale q = quantale_from_groupoid(g.groupoid);
    out.push_back(flag_check(name, q.report.all(), first_failure(q.report.checks)));
  } else if (name == "roundtrip") {
    const GroupoidRoundTrip rt = roundtrip_check(g.groupoid);
    out.push_back(flag_check(name, true, {}, "isomorphism on " + std::to_string(rt.iso.carrier.size()) + " + " +
                                                 std::to_string(rt.iso.base.size()) + " elements"));
  } else if (name == "effective" || name == "effective-iff-principal") {
    const EffectivenessReport e = check_effective_equivalence(g.groupoid, limits.tensor);
    if (name == "effective")
      out.push_back(flag_check(name, e.effective, e.witness));
    else
      out.push_back(flag_check(name, e.effective == e.principal, e.witness,
                               std::string("effective = ") + (e.effective ? "true" : "false")));
  } else {
    out.push_back(hypothesis_skip(name, "not applicable to a groupoid"));
  }
}

void run_entry_check(const Entry& e, const Limits& limits, const std::string& name, std::vector<CheckResult>& out,
                     std::optional<BasedContext>& ctx) {
  if (name == "build") {
    out.push_back(flag_check(name, true));
    return;
  }
  switch (e.kind) {
    case EntryKind::lattice:
    case EntryKind::frame:
      if (name == "lattice-laws") {
        out.push_back(flag_check(name, true, {}, std::to_string(e.lattice->size()) + " elements"));
      } else if (name == "frame-law") {
        auto r = check_frame(e.lattice);
        const auto* w = std::get_if<DistributivityWitness>(&r);
        out.push_back(flag_check(name, !w, w ? Witness{{"x", e.lattice->label(w->x)}, {"y", e.lattice->label(w->y)},
                                                        {"z", e.lattice->label(w->z)}}
                                              : Witness{}));
      } else {
        out.push_back(hypothesis_skip(name, "not applicable to a lattice"));
      }
      return;
    case EntryKind::quantale:
      if (name == "quantale-laws") {
        out.push_back(flag_check(name, true));
      } else if (name == "unital") {
        out.push_back(flag_check(name, e.quantale->unit().has_value(), {{"unit", "none"}}));
      } else if (name == "inverse-quantal-frame") {
        if (!e.quantale->unit()) {
          out.push_back(hypothesis_skip(name, "not unital"));
        } else {
          const PartialUnits p = partial_units(*e.quantale);
          out.push_back(flag_check(name, p.inverse_quantal_frame, {{"⋁ℐ(Q)", e.lattice->label(p.join)}}));
        }
      } else {
        out.push_back(hypothesis_skip(name, "not applicable to a quantale"));
      }
      return;
    case EntryKind::based:
    case EntryKind::support:
    case EntryKind::upsilon:
      if (!ctx) ctx.emplace(*e.based, limits);
      ctx->run(name, out);
      return;
    case EntryKind::groupoid:
      run_groupoid(*e.groupoid, limits, name, out);
      return;
  }
}

struct PlannedCheck {
  std::string name;
  std::optional<bool> expected;
};

std::vector<std::string> expand(const Entry& e, const std::string& item) {
  if (item == "all") {
    std::vector<std::string> v = {"build"};
    for (const auto& c : check_names(e.kind)) v.push_back(c);
    return v;
  }
  return {item};
}

std::vector<CheckRecord> evaluate(const Entry& e, const std::vector<PlannedCheck>& plan, const RunOptions& opts) {
  std::vector<CheckRecord> out;
  auto record = [&](CheckResult r, const std::optional<bool>& expected, double ms) {
    if (!r.passed && !r.skipped && r.witness.empty())
      r.witness.push_back({"note", r.note.empty() ? std::string("violated") : r.note});
    CheckRecord rec;
    rec.structure = e.name;
    rec.check = r.name;
    rec.citation = citation(r.name);
    rec.millis = opts.timing ? ms : 0;
    rec.expected = expected;
    rec.result = std::move(r);
    out.push_back(std::move(rec));
  };

  if (e.failure) {
    std::optional<bool> expected;
    for (const auto& p : plan)
      if (p.name == "build") expected = p.expected;
    record(from_error("build", *e.failure), expected, 0);
    return out;
  }

  std::optional<BasedContext> ctx;
  for (const auto& p : plan) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    try {
      run_entry_check(e, opts.limits, p.name, results, ctx);
    } catch (const Error& err) {
      results = {from_error(p.name, err)};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const bool group = results.size() != 1 || results.front().name != p.name;
    for (auto& r : results)
      if (std::none_of(out.begin(), out.end(), [&](const CheckRecord& c) { return c.check == r.name; }))
        record(std::move(r), group ? std::nullopt : p.expected, ms / results.size());
  }
  return out;
}

}  // namespace

std::vector<CheckRecord> run_checks(const Environment& env, const dsl::SpecDocument& doc, const RunOptions& opts) {
  std::map<std::string, std::vector<dsl::CheckItem>> declared;
  for (const auto& d : doc.decls)
    if (const auto* c = std::get_if<dsl::CheckDecl>(&d))
      declared[c->target.text].insert(declared[c->target.text].end(), c->items.begin(), c->items.end());

  std::vector<std::vector<PlannedCheck>> plans(env.entries.size());
  for (std::size_t i = 0; i < env.entries.size(); ++i) {
    const Entry& e = env.entries[i];
    const auto& items = declared[e.name];
    auto expectation = [&](const std::string& n) -> std::optional<bool> {
      for (const auto& it : items)
        if (it.check.text == n) return it.expect_pass;
      return std::nullopt;
    };
    std::vector<std::string> names;
    if (opts.select.empty()) {
      for (const auto& it : items)
        for (auto& n : expand(e, it.check.text)) names.push_back(std::move(n));
    } else {
      const auto& applicable = check_names(e.kind);
      for (const auto& s : opts.select)
        for (auto& n : expand(e, s)) {
          const bool ok = n == "build" || std::find(applicable.begin(), applicable.end(), n) != applicable.end() ||
                          (e.kind == EntryKind::groupoid && is_diagram(n)) ||
                          (e.kind == EntryKind::based && citations().count(n) && !is_diagram(n));
          if (ok) names.push_back(std::move(n));
        }
    }
    std::set<std::string> seen;
    for (auto& n : names)
      if (seen.insert(n).second) plans[i].push_back({n, expectation(n)});
    if (e.failure && plans[i].empty()) plans[i].push_back({"build", std::nullopt});
  }

  std::vector<std::vector<CheckRecord>> per(env.entries.size());
  const auto n = static_cast<long long>(env.entries.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (long long i = 0; i < n; ++i) per[i] = evaluate(env.entries[i], plans[i], opts);

  std::vector<CheckRecord> out;
  for (auto& p : per)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

std::vector<CheckRecord> run_checks(const dsl::SpecDocument& doc, const RunOptions& opts) {
  return run_checks(build_environment(doc, opts.limits), doc, opts);
}

}  // namespace qlab
