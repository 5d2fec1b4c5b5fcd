#include "cylclasses/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cylclasses {

// ---------------------------------------------------------------------------
// Alphabet
// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxLetters)
    throw UnsupportedSize("alphabet larger than " + std::to_string(kMaxLetters) + " letters");
  for (const auto& n : names_)
    if (!valid_token(n)) throw MalformedInput("bad token: \"" + n + "\"");
}

std::string Alphabet::canonical_name(std::size_t id) {
  std::string s;
  std::size_t v = id;
  while (true) {
    s.insert(s.begin(), static_cast<char>('a' + v % 26));
    if (v < 26) break;
    v = v / 26 - 1;
  }
  return s;
}

Alphabet Alphabet::canonical(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back(canonical_name(i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Letter l) const {
  if (l.id >= names_.size()) throw UnknownLetter("letter id out of range");
  return names_[l.id];
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return Letter{static_cast<LetterId>(i)};
  return std::nullopt;
}

bool valid_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (unsigned char c : tok) {
    if (c <= ' ' || c >= 127) return false;
    if (c == '/' || c == '|') return false;
  }
  return true;
}

std::string_view kind_name(PermKind k) {
  return k == PermKind::Abelian ? "abelian" : "quadratic";
}

std::string_view letter_type_name(LetterType t) {
  switch (t) {
    case LetterType::TopBottom: return "top-bottom";
    case LetterType::TopTop: return "top-top";
    default: return "bottom-bottom";
  }
}

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_tokens(std::string_view row) {
  std::vector<std::string> out;
  std::istringstream in{std::string(row)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Permutation Permutation::from_rows(Alphabet alphabet, std::vector<Letter> top,
                                   std::vector<Letter> bottom) {
  if (top.empty() || bottom.empty()) throw MalformedInput("empty row");
  const std::size_t k = alphabet.size();

  std::vector<int> top_count(k, 0), bottom_count(k, 0);
  for (Letter l : top) {
    if (l.id >= k) throw UnknownLetter("row letter outside alphabet");
    ++top_count[l.id];
  }
  for (Letter l : bottom) {
    if (l.id >= k) throw UnknownLetter("row letter outside alphabet");
    ++bottom_count[l.id];
  }

  bool once_per_row = top.size() == bottom.size();
  for (std::size_t i = 0; i < k && once_per_row; ++i)
    once_per_row = top_count[i] == 1 && bottom_count[i] == 1;

  Permutation p;
  p.alphabet_ = std::move(alphabet);
  p.top_ = std::move(top);
  p.bottom_ = std::move(bottom);

  if (once_per_row) {
    p.kind_ = PermKind::Abelian;
    return p;
  }

  bool doubled_top = false, doubled_bottom = false;
  for (std::size_t i = 0; i < k; ++i) {
    const int total = top_count[i] + bottom_count[i];
    if (total != 2)
      throw InvalidMultiplicity("letter \"" + p.alphabet_.name(Letter{(LetterId)i}) +
                                "\" occurs " + std::to_string(total) + " times");
    if (top_count[i] == 2) doubled_top = true;
    if (bottom_count[i] == 2) doubled_bottom = true;
  }
  if (!doubled_top) throw NoDoubledLetter("no letter occurs twice on the top row");
  if (!doubled_bottom) throw NoDoubledLetter("no letter occurs twice on the bottom row");

  p.kind_ = PermKind::Quadratic;
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  // One-line form has a "|"; two-row form a "/" or a newline separator.
  std::size_t bar_pos = text.find('|');
  if (bar_pos != std::string_view::npos) {
    if (text.find('|', bar_pos + 1) != std::string_view::npos)
      throw MalformedInput("more than one \"|\" separator");
    if (text.find('/') != std::string_view::npos)
      throw MalformedInput("both \"|\" and \"/\" present");
    auto left = split_tokens(text.substr(0, bar_pos));
    auto right = split_tokens(text.substr(bar_pos + 1));
    if (left.empty() || right.empty()) throw MalformedInput("empty side of \"|\"");

    std::vector<std::string> names;
    std::vector<Letter> tokens;
    auto intern = [&](const std::string& tok) {
      if (!valid_token(tok)) throw MalformedInput("bad token: \"" + tok + "\"");
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == tok) return Letter{static_cast<LetterId>(i)};
      if (names.size() >= kMaxLetters) throw UnsupportedSize("too many letters");
      names.push_back(tok);
      return Letter{static_cast<LetterId>(names.size() - 1)};
    };
    for (const auto& t : left) tokens.push_back(intern(t));
    for (const auto& t : right) tokens.push_back(intern(t));

    OneLineWord w;
    w.bar = left.size();
    w.tokens = std::move(tokens);
    w.alphabet = Alphabet(std::move(names));
    return from_one_line(w);
  }

  std::size_t sep = text.find('/');
  std::string top_part, bottom_part;
  if (sep != std::string_view::npos) {
    if (text.find('/', sep + 1) != std::string_view::npos)
      throw MalformedInput("more than one \"/\" separator");
    top_part = std::string(text.substr(0, sep));
    bottom_part = std::string(text.substr(sep + 1));
  } else {
    std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos)
      throw MalformedInput("expected two rows separated by \"/\" or a newline");
    top_part = std::string(text.substr(0, nl));
    bottom_part = std::string(text.substr(nl + 1));
    if (bottom_part.find('\n') != std::string::npos) {
      // Trailing newline is fine; a third row is not.
      auto rest = split_tokens(bottom_part.substr(bottom_part.find('\n')));
      if (!rest.empty()) throw MalformedInput("more than two rows");
      bottom_part = bottom_part.substr(0, bottom_part.find('\n'));
    }
  }

  auto top_toks = split_tokens(top_part);
  auto bottom_toks = split_tokens(bottom_part);
  if (top_toks.empty() || bottom_toks.empty()) throw MalformedInput("empty row");

  std::vector<std::string> names;
  auto intern = [&](const std::string& tok) {
    if (!valid_token(tok)) throw MalformedInput("bad token: \"" + tok + "\"");
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok) return Letter{static_cast<LetterId>(i)};
    if (names.size() >= kMaxLetters) throw UnsupportedSize("too many letters");
    names.push_back(tok);
    return Letter{static_cast<LetterId>(names.size() - 1)};
  };
  std::vector<Letter> top, bottom;
  for (const auto& t : top_toks) top.push_back(intern(t));
  for (const auto& t : bottom_toks) bottom.push_back(intern(t));

  return from_rows(Alphabet(std::move(names)), std::move(top), std::move(bottom));
}

Letter Permutation::letter(std::string_view name) const {
  auto l = alphabet_.find(name);
  if (!l) throw UnknownLetter("unknown letter: \"" + std::string(name) + "\"");
  return *l;
}

std::string Permutation::format() const {
  std::string out;
  for (std::size_t i = 0; i < top_.size(); ++i) {
    if (i) out += ' ';
    out += alphabet_.name(top_[i]);
  }
  out += " / ";
  for (std::size_t i = 0; i < bottom_.size(); ++i) {
    if (i) out += ' ';
    out += alphabet_.name(bottom_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// One-line representation
// ---------------------------------------------------------------------------

OneLineWord Permutation::one_line() const {
  OneLineWord w;
  w.alphabet = alphabet_;
  w.bar = top_.size();
  w.tokens = top_;
  w.tokens.insert(w.tokens.end(), bottom_.rbegin(), bottom_.rend());
  return w;
}

std::string OneLineWord::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == bar) out += "| ";
    out += alphabet.name(tokens[i]);
    if (i + 1 < tokens.size()) out += ' ';
  }
  return out;
}

Permutation from_one_line(const OneLineWord& w) {
  if (w.bar < 1 || w.bar >= w.tokens.size())
    throw MalformedInput("bar index outside 1..len-1");
  std::vector<Letter> top(w.tokens.begin(), w.tokens.begin() + w.bar);
  std::vector<Letter> bottom(w.tokens.rbegin(),
                             w.tokens.rend() - static_cast<std::ptrdiff_t>(w.bar));
  return Permutation::from_rows(w.alphabet, std::move(top), std::move(bottom));
}

// ---------------------------------------------------------------------------
// Letter types and mixedness
// ---------------------------------------------------------------------------

LetterType Permutation::letter_type(Letter x) const {
  if (x.id >= alphabet_.size()) throw UnknownLetter("letter id out of range");
  int t = 0, b = 0;
  for (Letter l : top_) t += l == x;
  for (Letter l : bottom_) b += l == x;
  if (t == 2) return LetterType::TopTop;
  if (b == 2) return LetterType::BottomBottom;
  return LetterType::TopBottom;
}

std::array<std::size_t, 3> Permutation::letter_type_counts() const {
  std::array<std::size_t, 3> counts{0, 0, 0};
  std::vector<int> t(alphabet_.size(), 0);
  for (Letter l : top_) ++t[l.id];
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (t[i] == 2) ++counts[static_cast<int>(LetterType::TopTop)];
    else if (t[i] == 0) ++counts[static_cast<int>(LetterType::BottomBottom)];
    else ++counts[static_cast<int>(LetterType::TopBottom)];
  }
  return counts;
}

bool Permutation::is_mixed() const {
  auto c = letter_type_counts();
  return c[0] > 0 && c[1] > 0 && c[2] > 0;
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

Permutation Permutation::canonical_form() const {
  const std::size_t k = alphabet_.size();
  std::vector<LetterId> remap(k, 0xFF);
  LetterId next = 0;
  auto visit = [&](Letter l) {
    if (remap[l.id] == 0xFF) remap[l.id] = next++;
  };
  for (Letter l : top_) visit(l);
  for (auto it = bottom_.rbegin(); it != bottom_.rend(); ++it) visit(*it);

  std::vector<Letter> top(top_.size()), bottom(bottom_.size());
  for (std::size_t i = 0; i < top_.size(); ++i) top[i] = Letter{remap[top_[i].id]};
  for (std::size_t i = 0; i < bottom_.size(); ++i) bottom[i] = Letter{remap[bottom_[i].id]};
  return from_rows(Alphabet::canonical(k), std::move(top), std::move(bottom));
}

bool Permutation::is_canonical() const { return *this == canonical_form(); }

bool operator==(const Permutation& a, const Permutation& b) {
  if (a.top_.size() != b.top_.size() || a.bottom_.size() != b.bottom_.size())
    return false;
  for (std::size_t i = 0; i < a.top_.size(); ++i)
    if (a.alphabet_.name(a.top_[i]) != b.alphabet_.name(b.top_[i])) return false;
  for (std::size_t i = 0; i < a.bottom_.size(); ++i)
    if (a.alphabet_.name(a.bottom_[i]) != b.alphabet_.name(b.bottom_[i]))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fixed-width encoding
// ---------------------------------------------------------------------------

PermKey encode(const Permutation& p) {
  if (p.letters() > kMaxKeyLetters)
    throw UnsupportedSize("encoding supports at most " +
                          std::to_string(kMaxKeyLetters) + " letters");
  PermKey k;
  k.bytes[0] = static_cast<std::uint8_t>(p.top_len());
  k.bytes[1] = static_cast<std::uint8_t>(p.bottom_len());
  std::size_t at = 2;
  for (Letter l : p.top()) k.bytes[at++] = l.id;
  for (Letter l : p.bottom()) k.bytes[at++] = l.id;
  return k;
}

Permutation decode(const PermKey& k) {
  const std::size_t l = k.top_len(), m = k.bottom_len();
  std::uint8_t max_id = 0;
  std::vector<Letter> top(l), bottom(m);
  for (std::size_t i = 0; i < l; ++i) {
    top[i] = Letter{k.bytes[2 + i]};
    max_id = std::max(max_id, k.bytes[2 + i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    bottom[i] = Letter{k.bytes[2 + l + i]};
    max_id = std::max(max_id, k.bytes[2 + l + i]);
  }
  return Permutation::from_rows(Alphabet::canonical(max_id + 1), std::move(top),
                                std::move(bottom));
}

std::size_t PermKeyHash::operator()(const PermKey& k) const noexcept {
  // FNV-1a over the fixed-width bytes.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t b : k.bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cylclasses
