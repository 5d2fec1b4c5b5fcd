#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cylclasses/moves.hpp"
#include "cylclasses/perm.hpp"
#include "cylclasses/strata.hpp"

namespace cylclasses {

// ---------------------------------------------------------------------------
// Orbit closure
// ---------------------------------------------------------------------------

struct OrbitLimits {
  std::optional<std::uint64_t> max_states;
  std::optional<double> max_seconds;
  // Frontier spill threshold (keys kept in memory before spilling to a temp
  // file); implementation tunable, not semantics.
  std::size_t frontier_mem_keys = std::size_t{4} << 20;
};

struct OrbitStats {
  std::uint64_t states_expanded{};
  std::uint64_t moves_applied{};
  std::uint64_t frontier_peak{};
};

struct OrbitResult {
  PermKey seed{};
  std::vector<PermKey> members;  // sorted by encoding
  bool exhausted{};
  OrbitStats stats;

  bool traced{};
  std::unordered_map<PermKey, std::pair<PermKey, MoveKind>, PermKeyHash> parents;

  bool contains(const PermKey& k) const;
  /// Move sequence from the seed to a member (empty for the seed itself);
  /// requires traced. Letters refer to each step's source alphabet.
  std::optional<std::vector<MoveKind>> path_to(const PermKey& target) const;
};

/// Breadth-first closure over canonical forms under neighbors(., ms).
/// Hitting a limit is reported via exhausted=false, not an error.
OrbitResult orbit_closure(const Permutation& seed, const MoveSet& ms,
                          const OrbitLimits& lim = {}, int workers = 1,
                          bool trace = false);

/// Replays a traced path, returning the canonical endpoint.
Permutation replay_path(const Permutation& seed,
                        const std::vector<MoveKind>& path);

enum class Tri : std::uint8_t { Yes, No, Unknown };
std::string_view tri_name(Tri t);

/// Yes when a closure from canonical(p) reaches canonical(q); No when the
/// closure exhausts without reaching it or the signatures differ; Unknown
/// when a limit was hit first.
Tri same_class(const Permutation& p, const Permutation& q, const MoveSet& ms,
               const OrbitLimits& lim = {}, int workers = 1);

// ---------------------------------------------------------------------------
// Whole-universe partition
// ---------------------------------------------------------------------------

struct OrbitClass {
  Permutation representative;  // lexicographically least member (by encoding)
  std::uint64_t size{};
  std::uint64_t mixed_count{};
  SingularityProfile signature;
};

struct OrbitPartition {
  std::vector<OrbitClass> classes;  // sorted by (signature, representative)
};

/// Union-find over a canonical, duplicate-free universe that is closed under
/// ms (enumerated universes are; violations raise
/// InternalInvariantViolation).
OrbitPartition partition(const std::vector<Permutation>& universe,
                         const MoveSet& ms, int workers = 1);

// ---------------------------------------------------------------------------
// Key-level engine shared with the classification pipeline
// ---------------------------------------------------------------------------

struct UniverseItem {
  PermKey key;
  std::uint16_t sig{};   // profile table index
  std::uint8_t flags{};  // bit 0: mixed

  static constexpr std::uint8_t kMixed = 1;
};

struct KeyClass {
  std::uint32_t rep_index{};  // into the sorted item vector
  std::uint64_t size{};
  std::uint64_t mixed{};
  std::uint16_t sig{};
};

/// Sorts items by key (rejecting duplicates), unions every item with each of
/// its neighbors, and returns classes ordered by representative key. Sig ids
/// must be constant on classes (checked during union).
std::vector<KeyClass> partition_engine(std::vector<UniverseItem>& items,
                                       const MoveSet& ms, int workers);

}  // namespace cylclasses
