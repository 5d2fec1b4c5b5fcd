#include "cylclasses/moves.hpp"

#include <algorithm>
#include <set>

namespace cylclasses {

namespace {

// One-line word with the bar as an explicit element, so deletions and
// insertions keep the bar attached to its gap.
constexpr std::int16_t kBarTok = -1;
using Word = std::vector<std::int16_t>;

Word word_of_perm(const Permutation& p) {
  Word w;
  w.reserve(p.top_len() + p.bottom_len() + 1);
  for (Letter l : p.top()) w.push_back(l.id);
  w.push_back(kBarTok);
  for (auto it = p.bottom().rbegin(); it != p.bottom().rend(); ++it)
    w.push_back(it->id);
  return w;
}

Word word_of_key(const PermKey& k) {
  const int l = k.top_len(), m = k.bottom_len();
  Word w;
  w.reserve(l + m + 1);
  for (int i = 0; i < l; ++i) w.push_back(k.bytes[2 + i]);
  w.push_back(kBarTok);
  for (int i = m - 1; i >= 0; --i) w.push_back(k.bytes[2 + l + i]);
  return w;
}

PermKey key_of_word(const Word& w) {
  PermKey k;
  const std::size_t bar =
      static_cast<std::size_t>(std::find(w.begin(), w.end(), kBarTok) - w.begin());
  const std::size_t m = w.size() - 1 - bar;
  k.bytes[0] = static_cast<std::uint8_t>(bar);
  k.bytes[1] = static_cast<std::uint8_t>(m);
  for (std::size_t i = 0; i < bar; ++i)
    k.bytes[2 + i] = static_cast<std::uint8_t>(w[i]);
  for (std::size_t i = 0; i < m; ++i)  // bottom row = reversed suffix
    k.bytes[2 + bar + i] = static_cast<std::uint8_t>(w[w.size() - 1 - i]);
  return k;
}

void canonicalize_word(Word& w) {
  std::array<std::int16_t, kMaxLetters> remap;
  remap.fill(-1);
  std::int16_t next = 0;
  for (auto& e : w) {
    if (e == kBarTok) continue;
    if (remap[e] < 0) remap[e] = next++;
    e = remap[e];
  }
}

std::pair<std::vector<Letter>, std::vector<Letter>> split_word(const Word& w) {
  const auto bar = std::find(w.begin(), w.end(), kBarTok);
  std::vector<Letter> top, bottom;
  for (auto it = w.begin(); it != bar; ++it)
    top.push_back(Letter{static_cast<LetterId>(*it)});
  for (auto it = w.rbegin(); it.base() - 1 != bar; ++it)
    bottom.push_back(Letter{static_cast<LetterId>(*it)});
  return {std::move(top), std::move(bottom)};
}

// Applicability of T_alpha (or its inverse) on a one-line word:
//  (i)  alpha regular: top-bottom, or not the only letter of its doubled type;
//  (ii) every occurrence admits a letter on its acting side: not the first
//       token / right after the bar (inverse: not the last / right before
//       the bar). Adjacent occurrences of alpha qualify: the pair moves as a
//       block (see t_word).
bool t_applicable_word(const Word& w, int alpha, bool inverse) {
  int bar_at = -1, p1 = -1, p2 = -1;
  int alpha_top = 0;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == kBarTok) {
      bar_at = i;
    } else if (w[i] == alpha) {
      (p1 < 0 ? p1 : p2) = i;
      if (bar_at < 0) ++alpha_top;
    }
  }
  if (p2 < 0) return false;  // alpha not present twice

  if (alpha_top != 1) {  // doubled on one row: need a sibling of the same type
    bool sibling = false;
    std::array<int, kMaxLetters> top_count{};
    for (int i = 0; i < bar_at; ++i) ++top_count[w[i]];
    std::array<char, kMaxLetters> seen{};
    for (auto e : w) {
      if (e == kBarTok || e == alpha || seen[e]) continue;
      seen[e] = 1;
      if ((alpha_top == 2 && top_count[e] == 2) ||
          (alpha_top == 0 && top_count[e] == 0))
        sibling = true;
    }
    if (!sibling) return false;
  }

  const int last = static_cast<int>(w.size()) - 1;
  for (int p : {p1, p2}) {
    if (!inverse) {
      if (p == 0 || p == bar_at + 1) return false;
    } else {
      if (p == last || p == bar_at - 1) return false;
    }
  }
  return true;
}

// Both deletions first, then both insertions; targets tracked by occurrence
// ordinal so the move stays well defined when the beta occurrences touch.
// Adjacent occurrences of alpha share one neighbor letter and move as a
// block, preserving their order.
void t_word(const Word& w, int alpha, bool inverse, Word& out) {
  int p1 = -1, p2 = -1;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] == alpha) (p1 < 0 ? p1 : p2) = i;

  auto ordinal_at = [&](int pos) {  // 0 or 1 among that letter's occurrences
    const int letter = w[pos];
    for (int i = 0; i < pos; ++i)
      if (w[i] == letter) return 1;
    return 0;
  };

  out.clear();
  for (auto e : w)
    if (e != alpha) out.push_back(e);

  auto insert_at_target = [&](int beta, int ordinal, int copies) {
    int seen = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] != beta) continue;
      if (seen++ == ordinal) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i) + (inverse ? 1 : 0),
                   static_cast<std::size_t>(copies), static_cast<std::int16_t>(alpha));
        return;
      }
    }
    throw InternalInvariantViolation("move target occurrence vanished");
  };

  if (p2 == p1 + 1) {  // adjacent pair
    const int n = inverse ? p2 + 1 : p1 - 1;
    insert_at_target(w[n], 1 - ordinal_at(n), 2);
    return;
  }
  const int n1 = inverse ? p1 + 1 : p1 - 1;
  const int n2 = inverse ? p2 + 1 : p2 - 1;
  insert_at_target(w[n1], 1 - ordinal_at(n1), 1);
  insert_at_target(w[n2], 1 - ordinal_at(n2), 1);
}

void u_top_word(Word& w) {
  const auto bar = std::find(w.begin(), w.end(), kBarTok);
  if (bar - w.begin() > 1) std::rotate(w.begin(), w.begin() + 1, bar);
}

void u_bottom_word(Word& w) {
  // bottom row rotates left <=> reversed suffix rotates right
  const auto bar = std::find(w.begin(), w.end(), kBarTok);
  if (w.end() - bar > 2) std::rotate(bar + 1, w.end() - 1, w.end());
}

void s_word(const Word& w, Word& out) {
  const auto bar = std::find(w.begin(), w.end(), kBarTok);
  out.clear();
  out.insert(out.end(), bar + 1, w.end());
  out.push_back(kBarTok);
  out.insert(out.end(), w.begin(), bar);
}

Permutation rebuild(const Permutation& p, const Word& w) {
  auto [top, bottom] = split_word(w);
  Permutation out = [&] {
    try {
      return Permutation::from_rows(p.alphabet(), std::move(top), std::move(bottom));
    } catch (const Error& e) {
      throw InternalInvariantViolation(std::string("move broke validity: ") + e.what());
    }
  }();
  if (out.kind() != p.kind())
    throw InternalInvariantViolation("move changed the permutation kind");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MoveKind / MoveSet
// ---------------------------------------------------------------------------

std::string MoveKind::str(const Alphabet& a) const {
  switch (tag) {
    case MoveTag::T: return "T:" + a.name(letter);
    case MoveTag::TInv: return "Tinv:" + a.name(letter);
    case MoveTag::UTop: return "Ut";
    case MoveTag::UBottom: return "Ub";
    default: return "S";
  }
}

std::string MoveKind::str() const {
  switch (tag) {
    case MoveTag::T: return "T:" + Alphabet::canonical_name(letter.id);
    case MoveTag::TInv: return "Tinv:" + Alphabet::canonical_name(letter.id);
    case MoveTag::UTop: return "Ut";
    case MoveTag::UBottom: return "Ub";
    default: return "S";
  }
}

MoveKind parse_move(std::string_view text, const Permutation& p) {
  if (text == "Ut") return {MoveTag::UTop, {}};
  if (text == "Ub") return {MoveTag::UBottom, {}};
  if (text == "S") return {MoveTag::S, {}};
  if (text.starts_with("T:")) return {MoveTag::T, p.letter(text.substr(2))};
  if (text.starts_with("Tinv:")) return {MoveTag::TInv, p.letter(text.substr(5))};
  throw MalformedInput("unknown move: \"" + std::string(text) + "\"");
}

MoveSet MoveSet::parse(std::string_view csv) {
  MoveSet ms;
  std::size_t at = 0;
  while (at <= csv.size()) {
    std::size_t comma = csv.find(',', at);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view tok = csv.substr(at, comma - at);
    if (tok == "T") ms.t = true;
    else if (tok == "Tinv") ms.t_inv = true;
    else if (tok == "Ut") ms.u_top = true;
    else if (tok == "Ub") ms.u_bottom = true;
    else if (tok == "S") ms.s = true;
    else throw MalformedInput("unknown move name: \"" + std::string(tok) + "\"");
    at = comma + 1;
    if (comma == csv.size()) break;
  }
  if (ms.empty()) throw MalformedInput("empty move set");
  return ms;
}

MoveSet MoveSet::default_for(PermKind kind) {
  MoveSet ms{true, true, true, true, false};
  if (kind == PermKind::Quadratic) ms.s = true;
  return ms;
}

MoveSet MoveSet::all() { return {true, true, true, true, true}; }

std::vector<std::string> MoveSet::names() const {
  std::vector<std::string> out;
  if (t) out.emplace_back("T");
  if (t_inv) out.emplace_back("Tinv");
  if (u_top) out.emplace_back("Ut");
  if (u_bottom) out.emplace_back("Ub");
  if (s) out.emplace_back("S");
  return out;
}

std::string MoveSet::str() const {
  std::string out;
  for (const auto& n : names()) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Public moves
// ---------------------------------------------------------------------------

bool t_applicable(const Permutation& p, Letter alpha) {
  if (alpha.id >= p.letters()) throw UnknownLetter("letter id out of range");
  return t_applicable_word(word_of_perm(p), alpha.id, false);
}

bool t_inverse_applicable(const Permutation& p, Letter alpha) {
  if (alpha.id >= p.letters()) throw UnknownLetter("letter id out of range");
  return t_applicable_word(word_of_perm(p), alpha.id, true);
}

Permutation t_move(const Permutation& p, Letter alpha) {
  if (alpha.id >= p.letters()) throw UnknownLetter("letter id out of range");
  Word w = word_of_perm(p);
  if (!t_applicable_word(w, alpha.id, false))
    throw NotApplicable("T is not applicable at \"" + p.alphabet().name(alpha) + "\"");
  Word out;
  t_word(w, alpha.id, false, out);
  return rebuild(p, out);
}

Permutation t_inverse(const Permutation& p, Letter alpha) {
  if (alpha.id >= p.letters()) throw UnknownLetter("letter id out of range");
  Word w = word_of_perm(p);
  if (!t_applicable_word(w, alpha.id, true))
    throw NotApplicable("Tinv is not applicable at \"" + p.alphabet().name(alpha) + "\"");
  Word out;
  t_word(w, alpha.id, true, out);
  return rebuild(p, out);
}

Permutation u_top(const Permutation& p) {
  std::vector<Letter> top(p.top().begin() + 1, p.top().end());
  top.push_back(p.top().front());
  return Permutation::from_rows(p.alphabet(), std::move(top), p.bottom());
}

Permutation u_bottom(const Permutation& p) {
  std::vector<Letter> bottom(p.bottom().begin() + 1, p.bottom().end());
  bottom.push_back(p.bottom().front());
  return Permutation::from_rows(p.alphabet(), p.top(), std::move(bottom));
}

Permutation s_move(const Permutation& p) {
  std::vector<Letter> top(p.bottom().rbegin(), p.bottom().rend());
  std::vector<Letter> bottom(p.top().rbegin(), p.top().rend());
  return Permutation::from_rows(p.alphabet(), std::move(top), std::move(bottom));
}

Permutation apply_move(const Permutation& p, MoveKind mk) {
  switch (mk.tag) {
    case MoveTag::T: return t_move(p, mk.letter);
    case MoveTag::TInv: return t_inverse(p, mk.letter);
    case MoveTag::UTop: return u_top(p);
    case MoveTag::UBottom: return u_bottom(p);
    default: return s_move(p);
  }
}

std::vector<std::pair<MoveKind, Permutation>> neighbors(const Permutation& p,
                                                        const MoveSet& ms) {
  std::vector<std::pair<MoveKind, Permutation>> out;
  std::set<std::string> seen;
  auto offer = [&](MoveKind mk, Permutation q) {
    Permutation c = q.canonical_form();
    if (seen.insert(c.format()).second) out.emplace_back(mk, std::move(c));
  };
  const std::size_t k = p.letters();
  if (ms.t)
    for (std::size_t id = 0; id < k; ++id) {
      Letter a{static_cast<LetterId>(id)};
      if (t_applicable(p, a)) offer({MoveTag::T, a}, t_move(p, a));
    }
  if (ms.t_inv)
    for (std::size_t id = 0; id < k; ++id) {
      Letter a{static_cast<LetterId>(id)};
      if (t_inverse_applicable(p, a)) offer({MoveTag::TInv, a}, t_inverse(p, a));
    }
  if (ms.u_top) offer({MoveTag::UTop, {}}, u_top(p));
  if (ms.u_bottom) offer({MoveTag::UBottom, {}}, u_bottom(p));
  if (ms.s) offer({MoveTag::S, {}}, s_move(p));
  return out;
}

// ---------------------------------------------------------------------------
// Hot path over keys
// ---------------------------------------------------------------------------

int neighbor_keys(const PermKey& k, const MoveSet& ms, MoveWorkspace& ws,
                  std::pair<PermKey, MoveKind>* out) {
  ws.word = word_of_key(k);
  int n = 0;
  for (auto e : ws.word)
    if (e != kBarTok) n = std::max(n, static_cast<int>(e) + 1);

  int count = 0;
  auto emit = [&](MoveKind mk) {
    canonicalize_word(ws.out);
    out[count++] = {key_of_word(ws.out), mk};
  };

  for (int pass = 0; pass < 2; ++pass) {
    const bool inverse = pass == 1;
    if ((inverse && !ms.t_inv) || (!inverse && !ms.t)) continue;
    for (int a = 0; a < n; ++a) {
      if (!t_applicable_word(ws.word, a, inverse)) continue;
      t_word(ws.word, a, inverse, ws.out);
      emit({inverse ? MoveTag::TInv : MoveTag::T, Letter{static_cast<LetterId>(a)}});
    }
  }
  if (ms.u_top) {
    ws.out = ws.word;
    u_top_word(ws.out);
    emit({MoveTag::UTop, {}});
  }
  if (ms.u_bottom) {
    ws.out = ws.word;
    u_bottom_word(ws.out);
    emit({MoveTag::UBottom, {}});
  }
  if (ms.s) {
    s_word(ws.word, ws.out);
    emit({MoveTag::S, {}});
  }
  return count;
}

}  // namespace cylclasses
