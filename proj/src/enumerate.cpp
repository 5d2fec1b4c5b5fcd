#include "cylclasses/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace cylclasses {

std::uint64_t double_factorial_odd(int n) {
  std::uint64_t v = 1;
  for (int i = 1; i <= n; ++i) v *= static_cast<std::uint64_t>(2 * i - 1);
  return v;
}

// ---------------------------------------------------------------------------
// PairPartitionIterator
// ---------------------------------------------------------------------------

PairPartitionIterator::PairPartitionIterator(int n, int first_partner)
    : n_(n), shard_(first_partner) {
  if (n < 1 || n > static_cast<int>(kMaxKeyLetters))
    throw UnsupportedSize("pairing enumeration supports 1.." +
                          std::to_string(kMaxKeyLetters) + " letters");
  if (shard_ >= 0 && (shard_ < 1 || shard_ > 2 * n_ - 1))
    throw MalformedInput("shard partner outside 1..2n-1");
  count_.assign(n_, 0);
  word_.assign(2 * n_, 0);
}

// Any prefix whose letters each occur at most twice, with first occurrences
// in alphabet order, completes to a full word, so candidate iteration needs
// no lookahead. Candidates at a position, in increasing (= lexicographic)
// order: open letters (count 1), then one unopened letter.
bool PairPartitionIterator::allowed(int pos, int letter) const {
  if (shard_ >= 0 && letter == 0 && pos > 0) return pos == shard_;
  if (shard_ >= 0 && pos == shard_) return letter == 0;
  if (letter < opened_) return count_[letter] == 1;
  return letter == opened_ && opened_ < n_;
}

void PairPartitionIterator::place(int pos, int letter) {
  word_[pos] = static_cast<std::uint8_t>(letter);
  if (++count_[letter] == 1) ++opened_;
}

void PairPartitionIterator::unplace(int pos) {
  const int letter = word_[pos];
  if (--count_[letter] == 0) --opened_;
}

void PairPartitionIterator::complete_from(int pos) {
  for (int p = pos; p < 2 * n_; ++p) {
    for (int letter = 0; letter <= opened_; ++letter) {
      if (!allowed(p, letter)) continue;
      place(p, letter);
      break;
    }
  }
}

bool PairPartitionIterator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    complete_from(0);
    return true;
  }
  for (int p = 2 * n_ - 1; p >= 0; --p) {
    const int current = word_[p];
    unplace(p);
    for (int letter = current + 1; letter <= opened_ && letter < n_; ++letter) {
      if (!allowed(p, letter)) continue;
      place(p, letter);
      complete_from(p + 1);
      return true;
    }
  }
  done_ = true;
  return false;
}

// ---------------------------------------------------------------------------
// EnumerationSpec
// ---------------------------------------------------------------------------

void EnumerationSpec::validate() const {
  if (letters < 1) throw MalformedInput("letters must be >= 1");
  if (letters > static_cast<int>(kMaxKeyLetters))
    throw UnsupportedSize("enumeration supports 1.." +
                          std::to_string(kMaxKeyLetters) + " letters");
  if (require_mixed && kind != PermKind::Quadratic)
    throw MalformedInput("require_mixed implies the quadratic kind");
  if (signature_filter) {
    const bool abelian_sig = signature_filter->flavor == Flavor::Abelian;
    if (abelian_sig != (kind == PermKind::Abelian))
      throw MalformedInput("signature flavor does not match the kind");
  }
}

// ---------------------------------------------------------------------------
// Abelian universe
// ---------------------------------------------------------------------------

AbelianEnumerator::AbelianEnumerator(int n) : n_(n) {
  if (n < 1 || n > static_cast<int>(kMaxKeyLetters))
    throw UnsupportedSize("enumeration supports 1.." +
                          std::to_string(kMaxKeyLetters) + " letters");
  bottom_.resize(n_);
  std::iota(bottom_.begin(), bottom_.end(), 0);
}

std::optional<Permutation> AbelianEnumerator::next() {
  if (done_) return std::nullopt;
  if (started_) {
    if (!std::next_permutation(bottom_.begin(), bottom_.end())) {
      done_ = true;
      return std::nullopt;
    }
  }
  started_ = true;
  std::vector<Letter> top(n_), bottom(n_);
  for (int i = 0; i < n_; ++i) {
    top[i] = Letter{static_cast<LetterId>(i)};
    bottom[i] = Letter{bottom_[i]};
  }
  return Permutation::from_rows(Alphabet::canonical(n_), std::move(top),
                                std::move(bottom));
}

// ---------------------------------------------------------------------------
// Quadratic universe
// ---------------------------------------------------------------------------

QuadraticEnumerator::QuadraticEnumerator(int n, int first_partner)
    : words_(n, first_partner) {}

bool QuadraticEnumerator::next_raw(std::span<const std::uint8_t>& word, int& bar) {
  const int n = words_.letters();
  while (true) {
    if (!have_word_ || bar_ >= dup_suffix_) {
      if (!words_.next()) return false;
      have_word_ = true;
      const auto w = words_.word();
      dup_prefix_ = 2 * n;
      dup_suffix_ = -1;
      std::array<int, kMaxKeyLetters> first_pos;
      first_pos.fill(-1);
      for (int i = 0; i < 2 * n; ++i) {
        const int letter = w[i];
        if (first_pos[letter] < 0) {
          first_pos[letter] = i;
        } else {
          dup_prefix_ = std::min(dup_prefix_, i);
          dup_suffix_ = std::max(dup_suffix_, first_pos[letter]);
        }
      }
      bar_ = dup_prefix_;  // valid bars are dup_prefix_+1 .. dup_suffix_
      if (bar_ >= dup_suffix_) continue;
    }
    ++bar_;
    word = words_.word();
    bar = bar_;
    return true;
  }
}

std::optional<Permutation> QuadraticEnumerator::next() {
  std::span<const std::uint8_t> w;
  int bar;
  if (!next_raw(w, bar)) return std::nullopt;
  const int total = static_cast<int>(w.size());
  std::vector<Letter> top, bottom;
  top.reserve(bar);
  bottom.reserve(total - bar);
  for (int i = 0; i < bar; ++i) top.push_back(Letter{w[i]});
  for (int i = total - 1; i >= bar; --i) bottom.push_back(Letter{w[i]});
  return Permutation::from_rows(Alphabet::canonical(total / 2), std::move(top),
                                std::move(bottom));
}

// ---------------------------------------------------------------------------
// Unified stream
// ---------------------------------------------------------------------------

UniverseEnumerator::UniverseEnumerator(EnumerationSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.kind == PermKind::Abelian)
    abelian_.emplace(spec_.letters);
  else
    quadratic_.emplace(spec_.letters);
}

std::optional<Permutation> UniverseEnumerator::next() {
  while (true) {
    std::optional<Permutation> p =
        abelian_ ? abelian_->next() : quadratic_->next();
    if (!p) return std::nullopt;
    if (spec_.require_mixed && !p->is_mixed()) continue;
    if (spec_.signature_filter && !(singularity_profile(*p) == *spec_.signature_filter))
      continue;
    return p;
  }
}

std::vector<Permutation> filter_by_signature(std::vector<Permutation> stream,
                                             const SingularityProfile& sig) {
  std::erase_if(stream, [&](const Permutation& p) {
    return !(singularity_profile(p) == sig);
  });
  return stream;
}

}  // namespace cylclasses
