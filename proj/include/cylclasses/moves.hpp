#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cylclasses/perm.hpp"

namespace cylclasses {

// ---------------------------------------------------------------------------
// Move kinds and move sets
// ---------------------------------------------------------------------------

enum class MoveTag : std::uint8_t { T, TInv, UTop, UBottom, S };

struct MoveKind {
  MoveTag tag{MoveTag::T};
  Letter letter{};  // meaningful for T/TInv only

  /// "T:a", "Tinv:b", "Ut", "Ub", "S".
  std::string str(const Alphabet& a) const;
  std::string str() const;  // canonical letter names

  friend auto operator<=>(const MoveKind&, const MoveKind&) = default;
};

/// Parses a move name against p's alphabet; throws MalformedInput/UnknownLetter.
MoveKind parse_move(std::string_view text, const Permutation& p);

struct MoveSet {
  bool t{}, t_inv{}, u_top{}, u_bottom{}, s{};

  /// Comma-separated subset of T,Tinv,Ut,Ub,S; throws MalformedInput.
  static MoveSet parse(std::string_view csv);
  /// {T,Tinv,Ut,Ub} for Abelian, {T,Tinv,Ut,Ub,S} for quadratic.
  static MoveSet default_for(PermKind kind);
  static MoveSet all();

  std::string str() const;
  std::vector<std::string> names() const;
  bool empty() const { return !(t || t_inv || u_top || u_bottom || s); }

  friend bool operator==(const MoveSet&, const MoveSet&) = default;
};

// ---------------------------------------------------------------------------
// The elementary moves. T acts through the one-line representation: each
// occurrence of alpha is deleted and reinserted immediately before the other
// occurrence of its left neighbor (after, right neighbor, for the inverse);
// the bar marker stays attached to its gap.
// ---------------------------------------------------------------------------

bool t_applicable(const Permutation& p, Letter alpha);
bool t_inverse_applicable(const Permutation& p, Letter alpha);

Permutation t_move(const Permutation& p, Letter alpha);
Permutation t_inverse(const Permutation& p, Letter alpha);
Permutation u_top(const Permutation& p);
Permutation u_bottom(const Permutation& p);
Permutation s_move(const Permutation& p);

/// Throws NotApplicable when the move's precondition fails.
Permutation apply_move(const Permutation& p, MoveKind mk);

/// All results of applicable moves in ms, canonicalized, deduplicated on the
/// resulting permutation (first witness kept), sorted by MoveKind.
std::vector<std::pair<MoveKind, Permutation>> neighbors(const Permutation& p,
                                                        const MoveSet& ms);

// ---------------------------------------------------------------------------
// Allocation-light neighbor expansion over canonical keys (orbit hot path).
// ---------------------------------------------------------------------------

struct MoveWorkspace {
  std::vector<std::int16_t> word, out;
};

/// At most one result per move kind per letter.
inline constexpr int kMaxNeighbors = 4 * kMaxKeyLetters + 3;

/// Writes (canonical key, move) pairs for every applicable move in ms;
/// duplicates are not removed. Returns the count (<= kMaxNeighbors).
int neighbor_keys(const PermKey& k, const MoveSet& ms, MoveWorkspace& ws,
                  std::pair<PermKey, MoveKind>* out);

}  // namespace cylclasses
