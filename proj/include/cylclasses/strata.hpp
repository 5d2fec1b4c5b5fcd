#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cylclasses/perm.hpp"

namespace cylclasses {

// ---------------------------------------------------------------------------
// Corners of the one-cylinder polygon. Each boundary circle (top: l corners,
// bottom: m corners) has one corner per segment gap; corner i sits between
// segment i-1 and segment i, cyclically, and corner 0 is the seam where the
// two vertical polygon sides are glued. Every corner has interior angle pi.
// ---------------------------------------------------------------------------

enum class Side : std::uint8_t { Top, Bottom };

struct Corner {
  Side side;
  std::uint16_t index;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Connected corner classes (the conical singularities), each listed in cycle
/// traversal order starting from its least corner. Classes are ordered by
/// their least corner.
std::vector<std::vector<Corner>> corner_cycles(const Permutation& p);

// ---------------------------------------------------------------------------
// Stratum signatures
// ---------------------------------------------------------------------------

enum class Flavor : std::uint8_t { Abelian, Quadratic };

struct SingularityProfile {
  Flavor flavor{Flavor::Abelian};
  std::vector<int> orders;  // sorted descending; H: >=0, Q: >=-1
  int genus{0};

  /// "H(2)", "Q(9,-1)": orders descending, comma-separated, no spaces.
  std::string str() const;

  friend bool operator==(const SingularityProfile&, const SingularityProfile&);
  friend bool operator<(const SingularityProfile&, const SingularityProfile&);
};

/// Accepts "H(...)"/"Q(...)" with orders in any order (normalized to
/// descending); throws MalformedInput / InconsistentGeometry.
SingularityProfile parse_signature(std::string_view text);

/// Gauss-Bonnet genus from the orders: Abelian (sum+2)/2, quadratic
/// (sum+4)/4; throws InconsistentGeometry when non-integral or negative.
int genus(Flavor flavor, std::span<const int> orders);
inline int genus(const SingularityProfile& p) { return genus(p.flavor, p.orders); }

/// Drops order-0 entries (marked points); genus is unchanged.
SingularityProfile collapse_marked_points(SingularityProfile p);

/// Cone-angle bookkeeping over the corner classes: a class of s corners has
/// cone angle s*pi, order s/2-1 (Abelian) or s-2 (quadratic).
SingularityProfile singularity_profile(const Permutation& p);

/// V - E + F = 2 - 2g with V = #corner classes, E = (l+m)/2 + 1, F = 1,
/// plus sum of class sizes = l + m.
bool euler_check(const Permutation& p);

// ---------------------------------------------------------------------------
// Suspension data and polygon geometry
// ---------------------------------------------------------------------------

struct SuspensionData {
  std::vector<std::complex<double>> zeta;  // indexed by letter id
  double height{1.0};
};

/// All-real suspension: 1 everywhere, with the row-sum condition for
/// generalized permutations balanced on the smallest-id letter of the
/// doubled type on the shorter row.
SuspensionData default_suspension(const Permutation& p);

struct PolygonChains {
  std::vector<std::array<double, 2>> top;     // starts at (0, height)
  std::vector<std::array<double, 2>> bottom;  // starts at (0, 0)
};

/// Broken lines of the cylindrical construction; throws SelfIntersecting if
/// the chains cross (only possible with nonzero imaginary parts).
PolygonChains polygon(const Permutation& p, const SuspensionData& susp);

// ---------------------------------------------------------------------------
// Allocation-light profile for enumeration/orbit hot paths. Operates on raw
// letter-id rows; independent of the corner_cycles tracing route.
// ---------------------------------------------------------------------------

struct RawProfile {
  bool abelian{};
  std::uint8_t num_orders{};
  std::array<std::int16_t, 2 * kMaxKeyLetters> orders{};  // descending

  friend auto operator<=>(const RawProfile&, const RawProfile&) = default;

  SingularityProfile to_profile() const;
  bool matches(const SingularityProfile& sig) const;
  /// Compares with order-0 entries dropped on this side; sig must already be
  /// collapsed.
  bool matches_ignoring_zeros(const SingularityProfile& sig) const;
};

RawProfile raw_profile(std::span<const std::uint8_t> top,
                       std::span<const std::uint8_t> bottom, bool abelian);

}  // namespace cylclasses
