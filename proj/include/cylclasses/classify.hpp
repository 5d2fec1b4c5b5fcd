#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cylclasses/enumerate.hpp"
#include "cylclasses/moves.hpp"
#include "cylclasses/orbits.hpp"
#include "cylclasses/reference.hpp"

namespace cylclasses {

struct ClassifyOptions {
  EnumerationSpec spec;  // kind, letters, require_mixed, signature_filter
  MoveSet moves;
  bool ignore_marked_points{false};
  int workers{1};
  const ReferenceTable* reference{&ReferenceTable::embedded()};
};

struct ReportClass {
  std::string representative;
  std::uint64_t size{};
  std::uint64_t mixed{};
};

struct ReportSignature {
  std::string signature;
  std::uint64_t population{};        // enumerated permutations with this signature
  std::uint64_t mixed_population{};  // mixed ones among them
  std::uint64_t mixed_class_count{};  // classes containing a mixed member
  std::vector<ReportClass> classes;
  const ReferenceEntry* reference{};  // null: no table entry / not checked
  bool match{true};
};

struct ClassReport {
  std::string kind;
  int letters{};
  std::vector<std::string> moves;
  bool mixed_only{};
  bool ignore_marked_points{};
  std::optional<std::string> signature_filter;
  /// Reference comparison happens only under the default move set for the
  /// kind; weakened move sets intentionally diverge from component counts.
  bool reference_checked{};
  std::uint64_t population{};
  std::vector<ReportSignature> signatures;

  bool any_mismatch() const;
  std::uint64_t class_count() const;
};

/// Enumerates the universe, partitions it under the move set, aggregates per
/// signature, and compares against the reference table. With require_mixed
/// the partition still runs over all valid permutations (moves may pass
/// through non-mixed intermediates); only the report is restricted to
/// classes containing a mixed member.
///
/// Reference comparison: moves never create or destroy top-bottom letters,
/// so non-mixed permutations form closed classes of their own that do not
/// correspond to extra components. Component counts are therefore compared
/// against all classes for the Abelian kind and against mixed-containing
/// classes for the quadratic kind (skipped when no mixed permutation
/// realizes the signature at this size).
ClassReport classify(const ClassifyOptions& options);

std::string report_json(const ClassReport& r);
std::string report_text(const ClassReport& r);

/// NDJSON line for one permutation: {"perm": "...", "signature": "..."}.
std::string ndjson_line(const Permutation& p);

}  // namespace cylclasses
