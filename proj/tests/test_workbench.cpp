#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qlab/workbench/checks.hpp"
#include "qlab/workbench/corpus.hpp"
#include "qlab/workbench/dsl.hpp"
#include "qlab/workbench/isomorphism.hpp"
#include "qlab/workbench/report.hpp"
#include "qlab/workbench/serialize.hpp"

using namespace qlab;

namespace {

const char* kTwo = R"(
# TWO over itself
lattice T { elems 0 1; order 0<=1 }
frame A = check T
quantale Q on T { mult: 1 1 -> 1; unit 1 }
based B = Q over A { lact: 1 1 -> 1; ract: 1 1 -> 1 }
support s on B { 1 -> 1 }
upsilon u on B { 1 -> 1 }
check B : all
)";

ErrorKind parse_error_kind(const std::string& text, std::string* message = nullptr) {
  try {
    dsl::parse_spec(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::SyntaxError;
}

std::vector<CheckRecord> run(const std::string& text, std::vector<std::string> select = {}) {
  RunOptions o;
  o.select = std::move(select);
  return run_checks(dsl::parse_spec(text), o);
}

}  // namespace

TEST(Dsl, ParsesDeclarationsInOrder) {
  const auto doc = dsl::parse_spec(kTwo);
  ASSERT_EQ(doc.decls.size(), 7u);
  EXPECT_TRUE(std::holds_alternative<dsl::LatticeDecl>(doc.decls[0]));
  EXPECT_TRUE(std::holds_alternative<dsl::CheckDecl>(doc.decls[6]));
  const auto& q = std::get<dsl::QuantaleDecl>(doc.decls[2]);
  ASSERT_TRUE(q.unit);
  EXPECT_EQ(q.unit->text, "1");
  EXPECT_EQ(q.unit->span.line, 5u);
}

TEST(Dsl, PrintThenParseIsIdentity) {
  for (const std::string& text : {std::string(kTwo), std::string("generate P = partition([[0, 1], [2]])\n")}) {
    const auto doc = dsl::parse_spec(text);
    EXPECT_EQ(dsl::parse_spec(dsl::print_spec(doc)), doc);
  }
  const auto corpus = dsl::parse_spec_file(corpus_file());
  EXPECT_EQ(dsl::parse_spec(dsl::print_spec(corpus)), corpus);
  EXPECT_EQ(dsl::print_spec(dsl::parse_spec(dsl::print_spec(corpus))), dsl::print_spec(corpus));
}

TEST(Dsl, SyntaxErrorsCarryPositions) {
  std::string msg;
  EXPECT_EQ(parse_error_kind("lattice L { elems a b;\n order a<=b", &msg), ErrorKind::SyntaxError);
  EXPECT_NE(msg.find("2:"), std::string::npos);
  EXPECT_EQ(parse_error_kind("lattice { }", &msg), ErrorKind::SyntaxError);
  EXPECT_NE(msg.find("1:"), std::string::npos);
  EXPECT_EQ(parse_error_kind("generate X = rel(2"), ErrorKind::SyntaxError);
}

TEST(Dsl, NamesMustResolve) {
  EXPECT_EQ(parse_error_kind("frame F = check L"), ErrorKind::UnresolvedName);
  EXPECT_EQ(parse_error_kind("generate X = nosuch(1)"), ErrorKind::UnresolvedName);
  EXPECT_EQ(parse_error_kind("generate X = two()\ngenerate X = two()"), ErrorKind::DuplicateName);
  // A frame where a lattice is required.
  EXPECT_EQ(parse_error_kind("generate F = chain(2)\nframe G = check F"), ErrorKind::UnresolvedName);
  EXPECT_EQ(parse_error_kind("check nothing : all"), ErrorKind::UnresolvedName);
}

TEST(Dsl, QuotedIdentifiers) {
  EXPECT_EQ(dsl::quote_id("abc"), "abc");
  EXPECT_EQ(dsl::quote_id("{(0,1)}"), "\"{(0,1)}\"");
  const auto doc = dsl::parse_spec(R"(lattice L { elems "{}" "{0}"; order "{}"<="{0}" })");
  EXPECT_EQ(std::get<dsl::LatticeDecl>(doc.decls[0]).elems[1].text, "{0}");
}

TEST(Dsl, HandWrittenTwoMatchesGenerator) {
  const auto env = build_environment(dsl::parse_spec(kTwo));
  const Entry* b = env.find("B");
  ASSERT_NE(b, nullptr);
  ASSERT_FALSE(b->failure);
  ASSERT_TRUE(b->based);
  EXPECT_TRUE(b->based->sigma);
  EXPECT_TRUE(b->based->upsilon);
  EXPECT_NO_THROW(find_isomorphism(b->based->based, two_quantale().based));
}

TEST(Dsl, CorpusQ1MatchesGenerator) {
  const auto env = build_environment(dsl::parse_spec_file(corpus_file()));
  const Entry* q1 = env.find("Q1");
  ASSERT_NE(q1, nullptr);
  ASSERT_TRUE(q1->based);
  const Isomorphism iso = find_isomorphism(q1->based->based, example_q1().based);
  EXPECT_TRUE(is_based_isomorphism(q1->based->based, example_q1().based, iso));
  EXPECT_THROW(find_isomorphism(example_q1().based, example_q2().based), Error);
}

TEST(Dsl, BuildFailuresBecomeRecords) {
  const auto records = run("lattice L { elems a b c; order a<=b, a<=c }\ncheck L : all");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].check, "build");
  EXPECT_EQ(records[0].verdict(), "fail");
  EXPECT_FALSE(records[0].as_expected());
}

TEST(Dsl, ConflictingTableEntriesAreRejected) {
  const auto env = build_environment(dsl::parse_spec(
      "lattice T { elems 0 1; order 0<=1 }\nquantale Q on T { mult: 1 1 -> 1, 1 1 -> 0 }"));
  const Entry* q = env.find("Q");
  ASSERT_NE(q, nullptr);
  ASSERT_TRUE(q->failure);
  EXPECT_EQ(q->failure->kind(), ErrorKind::BadTable);
}

TEST(Serialize, GeneratedStructuresRoundTripThroughText) {
  for (const auto& [name, sq] : corpus_quantales(false)) {
    const auto doc = spec_of("S", sq);
    const auto env = build_environment(dsl::parse_spec(dsl::print_spec(doc)));
    const Entry* s = env.find("S");
    ASSERT_NE(s, nullptr) << name;
    ASSERT_FALSE(s->failure) << name << ": " << s->failure->what();
    EXPECT_NO_THROW(find_isomorphism(s->based->based, sq.based)) << name;
    EXPECT_EQ(s->based->sigma.has_value(), sq.sigma.has_value());
    EXPECT_EQ(s->based->upsilon.has_value(), sq.upsilon.has_value());
  }
}

TEST(Serialize, GroupoidsRoundTripThroughText) {
  for (const auto& [name, g] : corpus_groupoids()) {
    if (name == "PAIR(3)") continue;
    const BuiltGroupoid b = compile(g);
    const auto env = build_environment(dsl::parse_spec(dsl::print_spec(spec_of("G", b.groupoid))));
    const Entry* e = env.find("G");
    ASSERT_NE(e, nullptr);
    ASSERT_FALSE(e->failure) << name << ": " << e->failure->what();
    const Isomorphism iso = find_isomorphism(e->groupoid->groupoid, b.groupoid);
    EXPECT_TRUE(is_groupoid_isomorphism(e->groupoid->groupoid, b.groupoid, iso)) << name;
  }
}

TEST(Checks, SelectRunsOnlyTheNamedCheck) {
  const auto records = run("generate Q = paperQ1()\ncheck Q : all", {"inverse-laws"});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].check, "inverse-laws");
  EXPECT_EQ(records[0].verdict(), "fail");
  ASSERT_FALSE(records[0].result.witness.empty());
  EXPECT_EQ(records[0].result.witness[0].label, "e");
}

TEST(Checks, ExpectedFailuresAreAsExpected) {
  const auto records = run("generate Q = paperQ1()\ncheck Q : unit-laws=pass, inverse-laws=fail");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].verdict(), "pass");
  EXPECT_EQ(records[1].verdict(), "fail");
  EXPECT_TRUE(all_as_expected(records));
  EXPECT_FALSE(all_as_expected(run("generate Q = paperQ1()\ncheck Q : inverse-laws")));
}

TEST(Checks, AllExpandsToKindChecks) {
  const auto records = run("generate T = two()\ncheck T : all");
  std::vector<std::string> names;
  for (const auto& r : records) names.push_back(r.check);
  // "lemmas" expands into one record per lemma instance check.
  EXPECT_EQ(names.front(), "build");
  for (const auto& c : check_names(EntryKind::based))
    if (c != "lemmas") EXPECT_NE(std::find(names.begin(), names.end(), c), names.end()) << c;
  EXPECT_NE(std::find(names.begin(), names.end(), "strongly-gelfand"), names.end());
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  EXPECT_TRUE(all_as_expected(records));
  for (const auto& r : records) EXPECT_FALSE(citation(r.check).empty()) << r.check;
}

TEST(Checks, OversizedStructuresAreSkipped) {
  RunOptions o;
  o.limits.quantale_scan = 4;
  const auto records = run_checks(dsl::parse_spec("generate R = rel(2)\ncheck R : multiplicative"), o);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].verdict(), "skipped(size)");
  EXPECT_TRUE(records[0].as_expected());
}

TEST(Checks, HypothesisSkips) {
  const auto records = run("generate R = retract(2)\ncheck R : roundtrip");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].verdict(), "skipped(hypothesis)");
}

TEST(Checks, EmptyDocumentGivesEmptyReport) {
  const auto records = run("");
  EXPECT_TRUE(records.empty());
  EXPECT_EQ(nlohmann::json::parse(report_json(records)), nlohmann::json::array());
  EXPECT_EQ(report_text(records), "0 checks: 0 pass, 0 fail, 0 skipped; 0 unexpected\n");
}

TEST(Report, JsonIsDeterministicAndOrdered) {
  const std::string text = "generate Q = paperQ2()\ncheck Q : all, unit-laws=fail, groupoid-quantale=fail, principal=fail";
  const std::string a = report_json(run(text));
  const std::string b = report_json(run(text));
  EXPECT_EQ(a, b);
  RunOptions par;
  par.parallel = true;
  EXPECT_EQ(report_json(run_checks(dsl::parse_spec(text), par)), a);

  const auto j = nlohmann::ordered_json::parse(a);
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"structure", "check", "verdict", "witnesses", "citation", "millis"}));
  for (const auto& r : j) {
    EXPECT_EQ(r["millis"], 0);
    for (const auto& w : r["witnesses"]) {
      EXPECT_TRUE(w.contains("role"));
      EXPECT_TRUE(w.contains("label"));
    }
  }
}

TEST(Report, TextMarksUnexpectedVerdicts) {
  const std::string t = report_text(run("generate Q = paperQ1()\ncheck Q : inverse-laws"));
  EXPECT_NE(t.find("UNEXPECTED"), std::string::npos);
  EXPECT_NE(t.find("1 checks: 0 pass, 1 fail, 0 skipped; 1 unexpected"), std::string::npos);
}

TEST(Isomorphism, PowersetMatchesHandBuiltSquare) {
  const std::vector<std::pair<Elem, Elem>> order = {{3, 0}, {3, 2}, {0, 1}, {2, 1}};
  auto square = FinSupLattice::from_order(4, order);
  const auto f = find_isomorphism(*powerset_lattice(2), *square);
  EXPECT_EQ(f[0], 3u);
  EXPECT_EQ(f[3], 1u);
  EXPECT_THROW(find_isomorphism(*powerset_lattice(2), *chain_lattice(4)), Error);
}

TEST(Isomorphism, RelationsMatchPairGroupoidQuantale) {
  const auto o = quantale_from_groupoid(compile(pair_set_groupoid(2)).groupoid);
  const Isomorphism iso = find_isomorphism(rel_quantale(2).based, o.based);
  EXPECT_TRUE(is_based_isomorphism(rel_quantale(2).based, o.based, iso));
}

TEST(Isomorphism, DifferentInvariantsGiveWitness) {
  try {
    find_isomorphism(rel_quantale(1).based, rel_quantale(2).based);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoIsomorphism);
    EXPECT_FALSE(e.witness().empty());
  }
}
