#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cylclasses/enumerate.hpp"
#include "cylclasses/moves.hpp"
#include "cylclasses/strata.hpp"

using namespace cylclasses;

namespace {

Permutation P(const char* text) { return Permutation::parse(text); }

std::vector<Permutation> universe(PermKind kind, int n) {
  std::vector<Permutation> out;
  EnumerationSpec spec;
  spec.kind = kind;
  spec.letters = n;
  UniverseEnumerator e(spec);
  while (auto p = e.next()) out.push_back(*p);
  return out;
}

std::vector<int> sizes_of(const std::vector<std::vector<Corner>>& classes) {
  std::vector<int> sizes;
  for (const auto& c : classes) sizes.push_back(static_cast<int>(c.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace

TEST_CASE("corner cycle of the H(2) example") {
  const auto classes = corner_cycles(P("a b c / c b a"));
  REQUIRE(classes.size() == 1);
  // the hand trace: P0-Q2-P2-Q0-P1-Q1
  const std::vector<Corner> expected{
      {Side::Top, 0}, {Side::Bottom, 2}, {Side::Top, 2},
      {Side::Bottom, 0}, {Side::Top, 1}, {Side::Bottom, 1}};
  CHECK(classes[0] == expected);
}

TEST_CASE("corner cycles of the quadratic examples") {
  const auto pillow = corner_cycles(P("a a / b b"));
  CHECK(sizes_of(pillow) == std::vector<int>{1, 1, 1, 1});

  const auto classes = corner_cycles(P("a b b / c c a"));
  CHECK(sizes_of(classes) == std::vector<int>{4, 1, 1});
  // the two self-loop corners sit between the doubled letters
  std::vector<Corner> singletons;
  for (const auto& c : classes)
    if (c.size() == 1) singletons.push_back(c[0]);
  std::sort(singletons.begin(), singletons.end());
  CHECK(singletons == std::vector<Corner>{{Side::Top, 2}, {Side::Bottom, 1}});
}

TEST_CASE("singularity profiles of the four oracle surfaces") {
  auto prof = singularity_profile(P("a b c / c b a"));
  CHECK(prof.str() == "H(2)");
  CHECK(prof.genus == 2);

  prof = singularity_profile(P("a b / b a"));
  CHECK(prof.str() == "H(0,0)");
  CHECK(prof.genus == 1);

  prof = singularity_profile(P("a a / b b"));
  CHECK(prof.str() == "Q(-1,-1,-1,-1)");
  CHECK(prof.genus == 0);

  prof = singularity_profile(P("a b b / c c a"));
  CHECK(prof.str() == "Q(2,-1,-1)");
  CHECK(prof.genus == 1);
}

TEST_CASE("genus from orders") {
  CHECK(genus(parse_signature("H(2)")) == 2);
  CHECK(genus(parse_signature("Q(12)")) == 4);
  CHECK(genus(parse_signature("Q(-1,-1,-1,-1)")) == 0);
  const std::vector<int> odd{1};
  CHECK_THROWS_AS((void)genus(Flavor::Abelian, odd), InconsistentGeometry);
  const std::vector<int> bad{-1};
  CHECK_THROWS_AS((void)genus(Flavor::Quadratic, bad), InconsistentGeometry);
}

TEST_CASE("signature text form is bit-exact") {
  CHECK(parse_signature("Q(9,-1)").str() == "Q(9,-1)");
  CHECK(parse_signature("Q(-1,9)").str() == "Q(9,-1)");  // normalized descending
  CHECK(parse_signature("H( 2 , 0 )").str() == "H(2,0)");
  CHECK(parse_signature("H()").genus == 1);
  CHECK_THROWS_AS((void)parse_signature("X(2)"), MalformedInput);
  CHECK_THROWS_AS((void)parse_signature("H(2"), MalformedInput);
  CHECK_THROWS_AS((void)parse_signature("H(a)"), MalformedInput);
  CHECK_THROWS_AS((void)parse_signature("H(-1)"), MalformedInput);
  CHECK_THROWS_AS((void)parse_signature("Q(-2)"), MalformedInput);
  CHECK_THROWS_AS((void)parse_signature("H(1)"), InconsistentGeometry);
}

TEST_CASE("collapse_marked_points drops zeros") {
  CHECK(collapse_marked_points(parse_signature("H(2,0,0)")).str() == "H(2)");
  CHECK(collapse_marked_points(parse_signature("Q(0,-1,-1,-1,-1,0)")).str() ==
        "Q(-1,-1,-1,-1)");
  CHECK(collapse_marked_points(parse_signature("H(0,0)")).str() == "H()");
}

TEST_CASE("euler check on the examples and exhaustively") {
  CHECK(euler_check(P("a b c / c b a")));
  CHECK(euler_check(P("a a / b b")));
  for (auto kind : {PermKind::Abelian, PermKind::Quadratic}) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& p : universe(kind, n)) {
        CHECK(euler_check(p));
        if (p.abelian())
          for (const auto& c : corner_cycles(p)) CHECK(c.size() % 2 == 0);
      }
    }
  }
}

TEST_CASE("profile invariances") {
  for (auto kind : {PermKind::Abelian, PermKind::Quadratic}) {
    for (const auto& p : universe(kind, 4)) {
      const auto sig = singularity_profile(p);
      CHECK(singularity_profile(p.canonical_form()) == sig);
      CHECK(singularity_profile(u_top(p)) == sig);
      for (int o : sig.orders) CHECK(o >= (p.abelian() ? 0 : -1));
    }
  }
}

TEST_CASE("raw profile agrees with the traced route") {
  for (auto kind : {PermKind::Abelian, PermKind::Quadratic}) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& p : universe(kind, n)) {
        std::vector<std::uint8_t> top, bottom;
        for (Letter l : p.top()) top.push_back(l.id);
        for (Letter l : p.bottom()) bottom.push_back(l.id);
        const auto raw = raw_profile(top, bottom, p.abelian());
        CHECK(raw.to_profile() == singularity_profile(p));
        CHECK(raw.matches(singularity_profile(p)));
      }
    }
  }
}

TEST_CASE("matches_ignoring_zeros") {
  const auto p = P("a b / a b");  // H(0,0)
  std::vector<std::uint8_t> top{0, 1}, bottom{0, 1};
  const auto raw = raw_profile(top, bottom, true);
  CHECK(raw.matches_ignoring_zeros(parse_signature("H()")));
  CHECK_FALSE(raw.matches_ignoring_zeros(parse_signature("H(2)")));
}

TEST_CASE("default suspension balances the row sums") {
  auto s = default_suspension(P("a b b / c c a"));
  CHECK(s.zeta == std::vector<std::complex<double>>(3, {1.0, 0.0}));

  s = default_suspension(P("a a b b / c c"));
  CHECK(s.zeta[2] == std::complex<double>{2.0, 0.0});  // c carries the slack
  CHECK(s.zeta[0] == std::complex<double>{1.0, 0.0});

  s = default_suspension(P("a b c / c b a"));
  CHECK(s.zeta == std::vector<std::complex<double>>(3, {1.0, 0.0}));

  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : universe(PermKind::Quadratic, n)) {
      const auto susp = default_suspension(p);
      std::complex<double> ts{}, bs{};
      for (Letter l : p.top()) ts += susp.zeta[l.id];
      for (Letter l : p.bottom()) bs += susp.zeta[l.id];
      CHECK(std::abs(ts - bs) < 1e-12);
      for (const auto& z : susp.zeta) CHECK(z.real() > 0);
    }
  }
}

TEST_CASE("polygon chains") {
  const auto square = polygon(P("a / a"), default_suspension(P("a / a")));
  CHECK(square.top ==
        std::vector<std::array<double, 2>>{{0, 1}, {1, 1}});
  CHECK(square.bottom ==
        std::vector<std::array<double, 2>>{{0, 0}, {1, 0}});

  const auto p = P("a b b / c c a");
  const auto chains = polygon(p, default_suspension(p));
  CHECK(chains.top.back() == std::array<double, 2>{3, 1});
  CHECK(chains.bottom.back() == std::array<double, 2>{3, 0});
  CHECK(chains.top.back()[0] == chains.bottom.back()[0]);
}

TEST_CASE("polygon validation") {
  const auto p = P("a b / b a");
  SuspensionData bad;
  bad.zeta = {{1, 0}};
  CHECK_THROWS_AS((void)polygon(p, bad), MalformedInput);  // wrong size
  bad.zeta = {{-1, 0}, {1, 0}};
  CHECK_THROWS_AS((void)polygon(p, bad), MalformedInput);  // negative real part
  bad.zeta = {{1, 0}, {1, 0}};
  bad.height = 0;
  CHECK_THROWS_AS((void)polygon(p, bad), MalformedInput);

  // crossing chains: top dips below the rising bottom line
  SuspensionData crossing;
  crossing.zeta = {{1.0, -2.0}, {1.0, 2.0}};
  crossing.height = 1.0;
  CHECK_THROWS_AS((void)polygon(p, crossing), SelfIntersecting);

  // a gentle complex suspension is fine
  SuspensionData ok;
  ok.zeta = {{1.0, 0.1}, {1.0, -0.1}};
  ok.height = 5.0;
  const auto chains = polygon(p, ok);
  CHECK(chains.top.size() == 3);
  CHECK(std::abs(chains.top.back()[0] - chains.bottom.back()[0]) < 1e-12);
}
