#pragma once

// Evaluation of specification documents: every declaration becomes an
// Entry (or a recorded build failure), and `check` declarations run named
// checks against entries.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/groupoid.hpp"
#include "qlab/workbench/dsl.hpp"
#include "qlab/workbench/generators.hpp"
#include "qlab/workbench/oracles.hpp"

namespace qlab {

struct Limits {
  std::size_t lattice = kMaxLatticeSize;        // carriers larger than this are skipped(size)
  std::size_t quantale_scan = 512;              // |Q| for cubic axiom scans
  std::size_t tensor = kDefaultTensorBound;     // tensor and pushout carriers
  std::uint64_t enumeration = kEnumerationLimit;  // candidate maps for the oracles
};

enum class EntryKind { lattice, frame, quantale, based, support, upsilon, groupoid };

std::string_view to_string(EntryKind k);

struct Entry {
  std::string name;
  EntryKind kind = EntryKind::lattice;
  dsl::Span span;
  std::optional<Error> failure;  // set when the declaration could not be built

  LatticePtr lattice;                    // lattice, frame, quantale carrier
  std::optional<Quantale> quantale;
  std::optional<SupportedQuantale> based;
  std::optional<SetGroupoid> set_groupoid;  // generated groupoids
  std::optional<BuiltGroupoid> groupoid;
  std::string target;                    // support/upsilon: the based quantale
};

/// Entries in declaration order. A support or upsilon declaration also
/// attaches its map to the based quantale it names.
struct Environment {
  std::vector<Entry> entries;

  const Entry* find(std::string_view name) const;
  Entry* find(std::string_view name);
};

Environment build_environment(const dsl::SpecDocument& doc, const Limits& limits = {});

/// One evaluated check. `expected` comes from `name=pass|fail` in the
/// document; without it a pass is expected.
struct CheckRecord {
  std::string structure;
  std::string check;
  CheckResult result;
  std::string citation;
  double millis = 0;
  std::optional<bool> expected;

  std::string verdict() const;  // pass, fail, skipped(size), skipped(hypothesis)
  bool as_expected() const;
};

struct RunOptions {
  Limits limits;
  /// Replaces the documents' check lists; "all" expands to every check of the
  /// structure's kind. Empty keeps the document's lists.
  std::vector<std::string> select;
  bool parallel = false;
  bool timing = false;  // millis stay 0 otherwise so reports are reproducible
};

std::vector<CheckRecord> run_checks(const Environment& env, const dsl::SpecDocument& doc, const RunOptions& opts = {});
std::vector<CheckRecord> run_checks(const dsl::SpecDocument& doc, const RunOptions& opts = {});

/// The checks available for a kind, in the order "all" runs them.
const std::vector<std::string>& check_names(EntryKind kind);
/// Group names accepted in check lists besides individual checks.
const std::vector<std::string>& check_groups();

/// Descriptive statement of the law a check verifies.
std::string citation(std::string_view check);

bool all_as_expected(const std::vector<CheckRecord>& records);

}  // namespace qlab
