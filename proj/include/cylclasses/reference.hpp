#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylclasses/strata.hpp"

namespace cylclasses {

/// Known connected-component count of a stratum, transcribed from the
/// classification literature. The tool never silently trusts the table:
/// classification mismatches are surfaced (CLI exit 3).
struct ReferenceEntry {
  SingularityProfile signature;
  int component_count{1};
  std::vector<std::string> labels;  // e.g. hyp/odd/even, reg/irr
  std::string source;
};

class ReferenceTable {
 public:
  /// Built-in table: Abelian strata of genus <= 4 (Kontsevich-Zorich) with
  /// marked-point variants, quadratic genus-0 strata (Lanneau), and the 8
  /// exceptional quadratic strata (Zorich; Chen-Moller).
  static const ReferenceTable& embedded();

  /// NDJSON: one {"signature","component_count","labels","source"} per line.
  static ReferenceTable load_file(const std::string& path);

  const ReferenceEntry* lookup(const SingularityProfile& sig) const;
  const std::vector<ReferenceEntry>& entries() const { return entries_; }
  const std::string& version() const { return version_; }

 private:
  void finalize();  // sort + uniqueness check

  std::vector<ReferenceEntry> entries_;
  std::string version_;
};

}  // namespace cylclasses
