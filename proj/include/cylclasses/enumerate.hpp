#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cylclasses/perm.hpp"
#include "cylclasses/strata.hpp"

namespace cylclasses {

std::uint64_t double_factorial_odd(int n);  // (2n-1)!!

// ---------------------------------------------------------------------------
// Streaming generator of canonical pairing words: length-2n sequences over n
// letters, each letter twice, first occurrences in alphabet order. Words come
// out in lexicographic order; there are (2n-1)!! of them. A shard fixes the
// partner of position 0, splitting the space into 2n-1 equal branches.
// ---------------------------------------------------------------------------

class PairPartitionIterator {
 public:
  /// first_partner >= 1 restricts to words whose second occurrence of the
  /// first letter sits at that position (one of 2n-1 equal shards).
  explicit PairPartitionIterator(int n, int first_partner = -1);

  bool next();
  std::span<const std::uint8_t> word() const { return word_; }
  int letters() const { return n_; }

 private:
  bool allowed(int pos, int letter) const;
  void place(int pos, int letter);
  void unplace(int pos);
  void complete_from(int pos);  // lex-least completion

  int n_;
  int shard_;  // forced position of letter 0's second occurrence, or -1
  bool started_ = false, done_ = false;
  int opened_ = 0;
  std::vector<std::uint8_t> count_;
  std::vector<std::uint8_t> word_;
};

// ---------------------------------------------------------------------------
// Universe enumerators (canonical forms only, deterministic order)
// ---------------------------------------------------------------------------

struct EnumerationSpec {
  PermKind kind{PermKind::Abelian};
  int letters{1};
  bool require_mixed{false};
  std::optional<SingularityProfile> signature_filter;

  void validate() const;  // require_mixed implies quadratic; letters bounds
};

/// Top row fixed to identity, bottom row over all n! permutations in
/// lexicographic order.
class AbelianEnumerator {
 public:
  explicit AbelianEnumerator(int n);
  std::optional<Permutation> next();

 private:
  int n_;
  bool started_ = false, done_ = false;
  std::vector<std::uint8_t> bottom_;
};

/// Pairing words crossed with bar positions 1..2n-1, filtered by validity
/// (a doubled letter on each row), in (word, bar) order.
class QuadraticEnumerator {
 public:
  explicit QuadraticEnumerator(int n, int first_partner = -1);
  /// Yields (word, bar) of the next valid generalized permutation.
  bool next_raw(std::span<const std::uint8_t>& word, int& bar);
  std::optional<Permutation> next();

 private:
  PairPartitionIterator words_;
  int bar_ = 0;
  int dup_prefix_ = 0, dup_suffix_ = -1;
  bool have_word_ = false;
};

/// Unified spec-driven stream (applies mixedness/signature filters).
class UniverseEnumerator {
 public:
  explicit UniverseEnumerator(EnumerationSpec spec);
  std::optional<Permutation> next();
  const EnumerationSpec& spec() const { return spec_; }

 private:
  EnumerationSpec spec_;
  std::optional<AbelianEnumerator> abelian_;
  std::optional<QuadraticEnumerator> quadratic_;
};

/// Lazily retains permutations whose profile equals sig; preserves order.
std::vector<Permutation> filter_by_signature(std::vector<Permutation> stream,
                                             const SingularityProfile& sig);

// ---------------------------------------------------------------------------
// Raw scan used by the classification engine: fn(word, bar) for every valid
// (word, bar) candidate in the shard. Rows: top = word[0..bar),
// bottom = reversed word[bar..2n).
// ---------------------------------------------------------------------------

template <class Fn>
void for_each_quadratic_raw(int n, int first_partner, Fn&& fn) {
  PairPartitionIterator it(n, first_partner);
  while (it.next()) {
    const auto w = it.word();
    int dup_prefix = 2 * n, dup_suffix = -1;
    std::array<int, kMaxKeyLetters> first_pos;
    first_pos.fill(-1);
    for (int i = 0; i < 2 * n; ++i) {
      const int letter = w[i];
      if (first_pos[letter] < 0) {
        first_pos[letter] = i;
      } else {
        dup_prefix = std::min(dup_prefix, i);
        dup_suffix = std::max(dup_suffix, first_pos[letter]);
      }
    }
    for (int bar = dup_prefix + 1; bar <= dup_suffix; ++bar) fn(w, bar);
  }
}

}  // namespace cylclasses
