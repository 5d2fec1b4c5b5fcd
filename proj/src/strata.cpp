#include "cylclasses/strata.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cylclasses {

// ---------------------------------------------------------------------------
// Edge-end bookkeeping shared by the cycle tracer and the raw profile.
//
// Segment ends: top segment i has ends 2i (Left) and 2i+1 (Right); bottom
// segment j has ends 2(l+j) and 2(l+j)+1. Corner i on a boundary circle owns
// the Right end of segment i-1 and the Left end of segment i (cyclically).
// Gluing matches ends: opposite rows (translation) Left<->Left, Right<->Right;
// same row (half turn) Left<->Right.
// ---------------------------------------------------------------------------

namespace {

struct GluingScratch {
  int l{}, m{};
  // match[e] = glued end; corner ids: top i -> i, bottom j -> l + j.
  std::vector<int> match;

  int corner_of_end(int e) const {
    const bool right = e & 1;
    const int seg = e / 2;
    if (seg < l) return right ? (seg + 1) % l : seg;
    const int j = seg - l;
    return right ? l + (j + 1) % m : l + j;
  }

  // Left end of the corner's right segment; corner ids coincide with segment
  // ids circle-wise, so this is 2*corner on both circles.
  int end_a(int corner) const { return 2 * corner; }

  int other_end(int corner, int e) const {
    // The corner's two ends: Left of segment `corner`, Right of the previous
    // segment on the same circle.
    int left_end, right_end;
    if (corner < l) {
      left_end = 2 * corner;
      right_end = 2 * ((corner - 1 + l) % l) + 1;
    } else {
      const int j = corner - l;
      left_end = 2 * (l + j);
      right_end = 2 * (l + ((j - 1 + m) % m)) + 1;
    }
    return e == left_end ? right_end : left_end;
  }
};

template <class Row>
GluingScratch build_gluing(const Row& top, const Row& bottom) {
  GluingScratch g;
  g.l = static_cast<int>(top.size());
  g.m = static_cast<int>(bottom.size());
  g.match.assign(2 * (g.l + g.m), -1);

  auto glue = [&](int seg_a, bool same_row, int seg_b) {
    const int la = 2 * seg_a, ra = 2 * seg_a + 1;
    const int lb = 2 * seg_b, rb = 2 * seg_b + 1;
    if (same_row) {
      g.match[la] = rb;
      g.match[rb] = la;
      g.match[ra] = lb;
      g.match[lb] = ra;
    } else {
      g.match[la] = lb;
      g.match[lb] = la;
      g.match[ra] = rb;
      g.match[rb] = ra;
    }
  };
  // occurrence segment/row per letter, -1 = unseen
  std::array<int, kMaxLetters> occ_seg;
  std::array<int, kMaxLetters> occ_top;
  occ_top.fill(-1);
  auto feed = [&](int seg, int letter, bool is_top) {
    if (occ_top[letter] < 0) {
      occ_seg[letter] = seg;
      occ_top[letter] = is_top ? 1 : 0;
      return;
    }
    const bool prev_top = occ_top[letter] == 1;
    const int a = prev_top ? occ_seg[letter] : g.l + occ_seg[letter];
    const int b = is_top ? seg : g.l + seg;
    glue(a, prev_top == is_top, b);
    occ_top[letter] = -1;
  };
  for (int i = 0; i < g.l; ++i) feed(i, static_cast<int>(top[i]), true);
  for (int j = 0; j < g.m; ++j) feed(j, static_cast<int>(bottom[j]), false);
  return g;
}

std::vector<int> class_sizes(const GluingScratch& g) {
  const int n = g.l + g.m;
  std::vector<int> sizes;
  std::vector<char> visited(n, 0);
  for (int c0 = 0; c0 < n; ++c0) {
    if (visited[c0]) continue;
    visited[c0] = 1;
    int size = 1;
    int e = g.end_a(c0);
    while (true) {
      const int e2 = g.match[e];
      const int c = g.corner_of_end(e2);
      if (c == c0) break;
      visited[c] = 1;
      ++size;
      e = g.other_end(c, e2);
    }
    sizes.push_back(size);
  }
  return sizes;
}

std::vector<int> ids_of(const std::vector<Letter>& row) {
  std::vector<int> ids(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) ids[i] = row[i].id;
  return ids;
}

}  // namespace

std::vector<std::vector<Corner>> corner_cycles(const Permutation& p) {
  GluingScratch g = build_gluing(ids_of(p.top()), ids_of(p.bottom()));
  const int n = g.l + g.m;
  auto corner_at = [&](int c) {
    return c < g.l ? Corner{Side::Top, static_cast<std::uint16_t>(c)}
                   : Corner{Side::Bottom, static_cast<std::uint16_t>(c - g.l)};
  };
  std::vector<std::vector<Corner>> classes;
  std::vector<char> visited(n, 0);
  for (int c0 = 0; c0 < n; ++c0) {
    if (visited[c0]) continue;
    visited[c0] = 1;
    std::vector<Corner> cyc{corner_at(c0)};
    int e = g.end_a(c0);
    while (true) {
      const int e2 = g.match[e];
      const int c = g.corner_of_end(e2);
      if (c == c0) break;
      visited[c] = 1;
      cyc.push_back(corner_at(c));
      e = g.other_end(c, e2);
    }
    classes.push_back(std::move(cyc));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

int genus(Flavor flavor, std::span<const int> orders) {
  const long sum = std::accumulate(orders.begin(), orders.end(), 0L);
  const long num = flavor == Flavor::Abelian ? sum + 2 : sum + 4;
  const long den = flavor == Flavor::Abelian ? 2 : 4;
  if (num % den != 0)
    throw InconsistentGeometry("order sum " + std::to_string(sum) +
                               " gives a non-integral genus");
  const long g = num / den;
  if (g < 0) throw InconsistentGeometry("negative genus");
  return static_cast<int>(g);
}

std::string SingularityProfile::str() const {
  std::string out(flavor == Flavor::Abelian ? "H(" : "Q(");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(orders[i]);
  }
  out += ')';
  return out;
}

bool operator==(const SingularityProfile& a, const SingularityProfile& b) {
  return a.flavor == b.flavor && a.orders == b.orders;
}

bool operator<(const SingularityProfile& a, const SingularityProfile& b) {
  if (a.flavor != b.flavor) return a.flavor < b.flavor;
  return std::lexicographical_compare(a.orders.begin(), a.orders.end(),
                                      b.orders.begin(), b.orders.end());
}

SingularityProfile parse_signature(std::string_view text) {
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  skip_ws();
  if (i >= text.size() || (text[i] != 'H' && text[i] != 'Q'))
    throw MalformedInput("signature must start with H or Q");
  SingularityProfile p;
  p.flavor = text[i] == 'H' ? Flavor::Abelian : Flavor::Quadratic;
  ++i;
  skip_ws();
  if (i >= text.size() || text[i] != '(') throw MalformedInput("expected '('");
  ++i;
  skip_ws();
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
        throw MalformedInput("expected an integer order");
      int v = 0;
      while (i < text.size() && std::isdigit((unsigned char)text[i]))
        v = v * 10 + (text[i++] - '0');
      p.orders.push_back(neg ? -v : v);
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      if (i < text.size() && text[i] == ')') { ++i; break; }
      throw MalformedInput("expected ',' or ')'");
    }
  }
  skip_ws();
  if (i != text.size()) throw MalformedInput("trailing characters after signature");

  const int min_order = p.flavor == Flavor::Abelian ? 0 : -1;
  for (int o : p.orders)
    if (o < min_order) throw MalformedInput("order below " + std::to_string(min_order));
  std::sort(p.orders.rbegin(), p.orders.rend());
  p.genus = genus(p.flavor, p.orders);
  return p;
}

SingularityProfile collapse_marked_points(SingularityProfile p) {
  std::erase(p.orders, 0);
  return p;
}

SingularityProfile singularity_profile(const Permutation& p) {
  const bool abelian = p.abelian();
  SingularityProfile out;
  out.flavor = abelian ? Flavor::Abelian : Flavor::Quadratic;
  for (const auto& cls : corner_cycles(p)) {
    const int s = static_cast<int>(cls.size());
    if (abelian) {
      if (s % 2 != 0)
        throw InconsistentGeometry("odd corner class on an Abelian surface");
      out.orders.push_back(s / 2 - 1);
    } else {
      out.orders.push_back(s - 2);
    }
  }
  std::sort(out.orders.rbegin(), out.orders.rend());
  out.genus = genus(out.flavor, out.orders);
  return out;
}

bool euler_check(const Permutation& p) {
  const auto classes = corner_cycles(p);
  const long lm = static_cast<long>(p.top_len() + p.bottom_len());
  long corner_total = 0;
  for (const auto& c : classes) corner_total += static_cast<long>(c.size());
  if (corner_total != lm) return false;

  int g;
  try {
    g = singularity_profile(p).genus;
  } catch (const InconsistentGeometry&) {
    return false;
  }
  const long v = static_cast<long>(classes.size());
  const long e = lm / 2 + 1;
  const long f = 1;
  return v - e + f == 2 - 2L * g;
}

// ---------------------------------------------------------------------------
// Raw profile (hot path)
// ---------------------------------------------------------------------------

RawProfile raw_profile(std::span<const std::uint8_t> top,
                       std::span<const std::uint8_t> bottom, bool abelian) {
  const int l = static_cast<int>(top.size());
  const int m = static_cast<int>(bottom.size());
  const int corners = l + m;

  // Union-find over corners, unions driven by the end matching.
  std::array<std::int8_t, 4 * kMaxKeyLetters> parent;
  for (int i = 0; i < corners; ++i) parent[i] = static_cast<std::int8_t>(i);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = static_cast<std::int8_t>(a);
  };
  auto corner_of = [&](bool is_top, int seg, bool right_end) {
    if (is_top) return right_end ? (seg + 1) % l : seg;
    return l + (right_end ? (seg + 1) % m : seg);
  };

  std::array<std::int8_t, 2 * kMaxKeyLetters> occ_seg;
  std::array<std::int8_t, 2 * kMaxKeyLetters> occ_top;
  occ_top.fill(-1);
  auto feed = [&](int seg, int letter, bool is_top) {
    if (occ_top[letter] < 0) {
      occ_seg[letter] = static_cast<std::int8_t>(seg);
      occ_top[letter] = is_top ? 1 : 0;
      return;
    }
    const bool prev_top = occ_top[letter] == 1;
    const int prev_seg = occ_seg[letter];
    if (prev_top == is_top) {  // half turn: Left<->Right
      unite(corner_of(prev_top, prev_seg, false), corner_of(is_top, seg, true));
      unite(corner_of(prev_top, prev_seg, true), corner_of(is_top, seg, false));
    } else {  // translation: Left<->Left, Right<->Right
      unite(corner_of(prev_top, prev_seg, false), corner_of(is_top, seg, false));
      unite(corner_of(prev_top, prev_seg, true), corner_of(is_top, seg, true));
    }
    occ_top[letter] = -1;
  };
  for (int i = 0; i < l; ++i) feed(i, top[i], true);
  for (int j = 0; j < m; ++j) feed(j, bottom[j], false);

  std::array<std::int8_t, 4 * kMaxKeyLetters> size{};
  for (int i = 0; i < corners; ++i) ++size[find(i)];

  RawProfile out;
  out.abelian = abelian;
  for (int i = 0; i < corners; ++i) {
    if (size[i] == 0) continue;
    const int s = size[i];
    int order;
    if (abelian) {
      if (s % 2 != 0)
        throw InconsistentGeometry("odd corner class on an Abelian surface");
      order = s / 2 - 1;
    } else {
      order = s - 2;
    }
    out.orders[out.num_orders++] = static_cast<std::int16_t>(order);
  }
  std::sort(out.orders.begin(), out.orders.begin() + out.num_orders,
            std::greater<>());
  return out;
}

SingularityProfile RawProfile::to_profile() const {
  SingularityProfile p;
  p.flavor = abelian ? Flavor::Abelian : Flavor::Quadratic;
  p.orders.assign(orders.begin(), orders.begin() + num_orders);
  p.genus = genus(p.flavor, p.orders);
  return p;
}

bool RawProfile::matches(const SingularityProfile& sig) const {
  if ((sig.flavor == Flavor::Abelian) != abelian) return false;
  if (sig.orders.size() != num_orders) return false;
  for (std::size_t i = 0; i < sig.orders.size(); ++i)
    if (sig.orders[i] != orders[i]) return false;
  return true;
}

bool RawProfile::matches_ignoring_zeros(const SingularityProfile& sig) const {
  if ((sig.flavor == Flavor::Abelian) != abelian) return false;
  std::size_t at = 0;
  for (std::size_t i = 0; i < num_orders; ++i) {
    if (orders[i] == 0) continue;
    if (at >= sig.orders.size() || sig.orders[at] != orders[i]) return false;
    ++at;
  }
  return at == sig.orders.size();
}

// ---------------------------------------------------------------------------
// Suspension data and polygon
// ---------------------------------------------------------------------------

SuspensionData default_suspension(const Permutation& p) {
  SuspensionData s;
  s.zeta.assign(p.letters(), {1.0, 0.0});
  s.height = 1.0;
  const long l = static_cast<long>(p.top_len());
  const long m = static_cast<long>(p.bottom_len());
  if (l != m) {
    // (l - m) is even: l = tb + 2*tt, m = tb + 2*bb.
    const LetterType want =
        l > m ? LetterType::BottomBottom : LetterType::TopTop;
    const double bump = static_cast<double>(std::labs(l - m)) / 2.0;
    for (std::size_t id = 0; id < p.letters(); ++id) {
      if (p.letter_type(Letter{static_cast<LetterId>(id)}) == want) {
        s.zeta[id] += bump;
        break;
      }
    }
  }
  return s;
}

namespace {

using Pt = std::array<double, 2>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& q) {
  return std::min(a[0], b[0]) <= q[0] && q[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= q[1] && q[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

PolygonChains polygon(const Permutation& p, const SuspensionData& susp) {
  if (susp.zeta.size() != p.letters())
    throw MalformedInput("suspension vector size does not match the alphabet");
  if (!(susp.height > 0)) throw MalformedInput("height must be positive");
  std::complex<double> top_sum{0, 0}, bottom_sum{0, 0};
  for (Letter l : p.top()) {
    if (!(susp.zeta[l.id].real() > 0))
      throw MalformedInput("zeta real parts must be positive");
    top_sum += susp.zeta[l.id];
  }
  for (Letter l : p.bottom()) bottom_sum += susp.zeta[l.id];
  if (std::abs(top_sum - bottom_sum) > 1e-9 * std::max(1.0, std::abs(top_sum)))
    throw MalformedInput("row sums of zeta differ");

  PolygonChains out;
  auto walk = [&](const std::vector<Letter>& row, double y0) {
    std::vector<Pt> pts;
    Pt at{0.0, y0};
    pts.push_back(at);
    for (Letter l : row) {
      at[0] += susp.zeta[l.id].real();
      at[1] += susp.zeta[l.id].imag();
      pts.push_back(at);
    }
    return pts;
  };
  out.top = walk(p.top(), susp.height);
  out.bottom = walk(p.bottom(), 0.0);

  // Chains must not cross each other or themselves (adjacent self segments
  // share a vertex and are exempt).
  auto seg = [](const std::vector<Pt>& c, std::size_t i) {
    return std::pair<Pt, Pt>{c[i], c[i + 1]};
  };
  const std::size_t nt = out.top.size() - 1, nb = out.bottom.size() - 1;
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      auto [a, b] = seg(out.top, i);
      auto [c, d] = seg(out.bottom, j);
      if (segments_intersect(a, b, c, d))
        throw SelfIntersecting("broken lines cross");
    }
  auto check_self = [&](const std::vector<Pt>& c) {
    const std::size_t n = c.size() - 1;
    for (std::size_t i = 0; i + 2 < n + 1; ++i)
      for (std::size_t j = i + 2; j < n; ++j) {
        auto [a, b] = seg(c, i);
        auto [d, e] = seg(c, j);
        if (segments_intersect(a, b, d, e))
          throw SelfIntersecting("broken line crosses itself");
      }
  };
  check_self(out.top);
  check_self(out.bottom);
  return out;
}

}  // namespace cylclasses
