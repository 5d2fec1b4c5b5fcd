#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cylclasses {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedInput : Error { using Error::Error; };
struct InvalidMultiplicity : Error { using Error::Error; };
struct NoDoubledLetter : Error { using Error::Error; };
struct UnknownLetter : Error { using Error::Error; };
struct NotApplicable : Error { using Error::Error; };
struct InconsistentGeometry : Error { using Error::Error; };
struct SelfIntersecting : Error { using Error::Error; };
struct MalformedReferenceFile : Error { using Error::Error; };
struct UnsupportedSize : Error { using Error::Error; };
struct InternalInvariantViolation : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Letters and alphabets
// ---------------------------------------------------------------------------

using LetterId = std::uint8_t;

/// Interned symbol; ids are dense 0..k-1 within one permutation's alphabet.
struct Letter {
  LetterId id{0};
  friend auto operator<=>(Letter, Letter) = default;
};

/// Alphabets above this size are rejected at construction.
inline constexpr std::size_t kMaxLetters = 128;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// a, b, ..., z, aa, ab, ... spreadsheet-style names for k letters.
  static Alphabet canonical(std::size_t k);
  static std::string canonical_name(std::size_t id);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter l) const;
  std::optional<Letter> find(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Token rules for display names: ASCII printable, no whitespace, '/' or '|'.
bool valid_token(std::string_view tok);

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

enum class PermKind : std::uint8_t { Abelian, Quadratic };

std::string_view kind_name(PermKind k);

class Permutation;

/// Top row, a bar, then the reversed bottom row.
struct OneLineWord {
  Alphabet alphabet;
  std::vector<Letter> tokens;
  std::size_t bar{1};  // gap index in 1..tokens.size()-1

  std::string text() const;
};

enum class LetterType : std::uint8_t { TopBottom, TopTop, BottomBottom };

std::string_view letter_type_name(LetterType t);

/// Immutable two-row permutation datum. Kind is classified at construction:
/// every letter exactly once per row -> Abelian (labeled permutation),
/// otherwise every letter exactly twice overall with a doubled letter on each
/// row -> Quadratic (generalized permutation).
class Permutation {
 public:
  static Permutation parse(std::string_view text);
  static Permutation from_rows(Alphabet alphabet, std::vector<Letter> top,
                               std::vector<Letter> bottom);

  PermKind kind() const { return kind_; }
  bool abelian() const { return kind_ == PermKind::Abelian; }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t letters() const { return alphabet_.size(); }
  const std::vector<Letter>& top() const { return top_; }
  const std::vector<Letter>& bottom() const { return bottom_; }
  std::size_t top_len() const { return top_.size(); }
  std::size_t bottom_len() const { return bottom_.size(); }

  Letter letter(std::string_view name) const;

  /// Two-row text, single spaces: "a b b / c c a".
  std::string format() const;

  OneLineWord one_line() const;

  LetterType letter_type(Letter x) const;
  /// {TopBottom, TopTop, BottomBottom} occurrence counts.
  std::array<std::size_t, 3> letter_type_counts() const;
  /// True iff all three letter types occur (always false for Abelian).
  bool is_mixed() const;

  /// Relabels by order of first appearance in the one-line word; display
  /// names become the canonical ones. Idempotent.
  Permutation canonical_form() const;
  bool is_canonical() const;

  /// Semantic equality: the same rows of display names (internal id
  /// assignment is representation, not value).
  friend bool operator==(const Permutation& a, const Permutation& b);

 private:
  Permutation() = default;

  Alphabet alphabet_;
  std::vector<Letter> top_, bottom_;
  PermKind kind_{PermKind::Abelian};
};

Permutation from_one_line(const OneLineWord& w);

// ---------------------------------------------------------------------------
// Fixed-width canonical encoding (row lengths + letter ids); the dedup key
// and tie-breaking sort key for enumeration and orbit work.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxKeyLetters = 16;

struct PermKey {
  std::array<std::uint8_t, 2 + 2 * kMaxKeyLetters> bytes{};

  std::uint8_t top_len() const { return bytes[0]; }
  std::uint8_t bottom_len() const { return bytes[1]; }

  friend auto operator<=>(const PermKey&, const PermKey&) = default;
};

struct PermKeyHash {
  std::size_t operator()(const PermKey& k) const noexcept;
};

/// Requires letters() <= kMaxKeyLetters; callers encode canonical forms so
/// that key equality means equality up to renumbering.
PermKey encode(const Permutation& p);
/// Rebuilds the permutation with canonical display names.
Permutation decode(const PermKey& k);

}  // namespace cylclasses
