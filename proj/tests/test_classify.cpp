#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cylclasses/classify.hpp"

using namespace cylclasses;

namespace {

ClassifyOptions base(PermKind kind, int letters) {
  ClassifyOptions opt;
  opt.spec.kind = kind;
  opt.spec.letters = letters;
  opt.moves = MoveSet::default_for(kind);
  return opt;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string(std::tmpnam(nullptr)) + ".ndjson";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("embedded reference table") {
  const auto& table = ReferenceTable::embedded();
  CHECK_FALSE(table.entries().empty());
  for (std::size_t i = 1; i < table.entries().size(); ++i)
    CHECK(table.entries()[i - 1].signature < table.entries()[i].signature);

  auto* e = table.lookup(parse_signature("Q(-1,9)"));
  REQUIRE(e);
  CHECK(e->component_count == 2);
  e = table.lookup(parse_signature("Q(12)"));
  REQUIRE(e);
  CHECK(e->component_count == 2);
  e = table.lookup(parse_signature("Q(6,6)"));
  REQUIRE(e);
  CHECK(e->component_count == 3);  // hyperelliptic + regular + irregular
  CHECK(e->labels == std::vector<std::string>{"hyp", "reg", "irr"});
  e = table.lookup(parse_signature("H(4)"));
  REQUIRE(e);
  CHECK(e->component_count == 2);
  e = table.lookup(parse_signature("H(2,0)"));
  REQUIRE(e);
  CHECK(e->component_count == 1);
  e = table.lookup(parse_signature("Q(-1,-1,-1,-1)"));
  REQUIRE(e);
  CHECK(e->component_count == 1);

  CHECK(table.lookup(parse_signature("Q(2,2)")) == nullptr);  // deliberately absent
}

TEST_CASE("reference file loading") {
  TempFile good(
      "{\"signature\": \"H(2)\", \"component_count\": 7, \"labels\": [\"x\"], "
      "\"source\": \"test\"}\n"
      "\n"
      "{\"signature\": \"Q(-1,9)\", \"component_count\": 2}\n");
  const auto table = ReferenceTable::load_file(good.path);
  CHECK(table.entries().size() == 2);
  auto* e = table.lookup(parse_signature("H(2)"));
  REQUIRE(e);
  CHECK(e->component_count == 7);
  CHECK(e->labels == std::vector<std::string>{"x"});

  TempFile bad_json("{not json}\n");
  CHECK_THROWS_AS((void)ReferenceTable::load_file(bad_json.path),
                  MalformedReferenceFile);
  TempFile dup(
      "{\"signature\": \"H(2)\", \"component_count\": 1}\n"
      "{\"signature\": \"H(2)\", \"component_count\": 2}\n");
  CHECK_THROWS_AS((void)ReferenceTable::load_file(dup.path), MalformedReferenceFile);
  TempFile zero("{\"signature\": \"H(2)\", \"component_count\": 0}\n");
  CHECK_THROWS_AS((void)ReferenceTable::load_file(zero.path), MalformedReferenceFile);
  CHECK_THROWS_AS((void)ReferenceTable::load_file("/nonexistent/path.ndjson"),
                  MalformedReferenceFile);
}

TEST_CASE("abelian classification at three letters") {
  const auto r = classify(base(PermKind::Abelian, 3));
  CHECK(r.kind == "abelian");
  CHECK(r.population == 6);
  CHECK(r.reference_checked);
  REQUIRE(r.signatures.size() == 2);
  CHECK(r.signatures[0].signature == "H(0,0,0)");
  CHECK(r.signatures[0].classes.size() == 1);
  CHECK(r.signatures[0].population == 3);
  CHECK(r.signatures[0].match);
  CHECK(r.signatures[1].signature == "H(2)");
  CHECK(r.signatures[1].classes.size() == 1);
  CHECK(r.signatures[1].classes[0].size == 3);
  CHECK(r.signatures[1].classes[0].representative == "a b c / a c b");
  CHECK_FALSE(r.any_mismatch());
}

TEST_CASE("quadratic classification at two letters") {
  const auto r = classify(base(PermKind::Quadratic, 2));
  REQUIRE(r.signatures.size() == 1);
  const auto& s = r.signatures[0];
  CHECK(s.signature == "Q(-1,-1,-1,-1)");
  CHECK(s.classes.size() == 1);
  CHECK(s.mixed_class_count == 0);
  CHECK(s.mixed_population == 0);
  REQUIRE(s.reference);
  CHECK(s.match);  // no mixed permutations at this size: comparison skipped
}

TEST_CASE("signature filter narrows the report") {
  auto opt = base(PermKind::Quadratic, 4);
  opt.spec.signature_filter = parse_signature("Q(5,-1)");
  const auto r = classify(opt);
  REQUIRE(r.signatures.size() == 1);
  CHECK(r.signatures[0].signature == "Q(5,-1)");
  CHECK(r.signatures[0].population == 62);
  CHECK(r.signatures[0].classes.size() == 1);
  CHECK(r.population == 62);

  // an unrealized signature still yields an (empty) block
  opt.spec.signature_filter = parse_signature("Q(12)");
  const auto empty = classify(opt);
  REQUIRE(empty.signatures.size() == 1);
  CHECK(empty.signatures[0].population == 0);
  CHECK(empty.signatures[0].classes.empty());
  CHECK(empty.signatures[0].match);
  CHECK_FALSE(empty.any_mismatch());
}

TEST_CASE("mixed-only reports keep only classes with mixed members") {
  auto opt = base(PermKind::Quadratic, 4);
  opt.spec.require_mixed = true;
  const auto r = classify(opt);
  std::uint64_t mixed_total = 0;
  for (const auto& s : r.signatures) {
    CHECK(s.mixed_population > 0);
    CHECK(s.classes.size() == s.mixed_class_count);
    for (const auto& c : s.classes) CHECK(c.mixed > 0);
    mixed_total += s.mixed_population;
  }
  CHECK(r.population == mixed_total);
  // the all-permutations run agrees on populations
  const auto full = classify(base(PermKind::Quadratic, 4));
  std::uint64_t full_mixed = 0;
  for (const auto& s : full.signatures) full_mixed += s.mixed_population;
  CHECK(full_mixed == mixed_total);
}

TEST_CASE("ignore marked points aggregates signatures") {
  auto opt = base(PermKind::Abelian, 5);
  opt.ignore_marked_points = true;
  const auto r = classify(opt);
  std::vector<std::string> sigs;
  for (const auto& s : r.signatures) sigs.push_back(s.signature);
  CHECK(sigs == std::vector<std::string>{"H()", "H(1,1)", "H(2)", "H(4)"});

  // with a filter: Q(2,-1,-1) at 4 letters means its marked variant too
  auto qopt = base(PermKind::Quadratic, 4);
  qopt.ignore_marked_points = true;
  qopt.spec.signature_filter = parse_signature("Q(2,-1,-1)");
  const auto q = classify(qopt);
  REQUIRE(q.signatures.size() == 1);
  CHECK(q.signatures[0].signature == "Q(2,-1,-1)");
  CHECK(q.signatures[0].population == 56);  // all of Q(2,0,-1,-1)
}

TEST_CASE("reference comparison only under the default move set") {
  auto opt = base(PermKind::Abelian, 3);
  opt.moves = MoveSet::parse("T,Tinv,Ut,Ub,S");
  const auto r = classify(opt);
  CHECK_FALSE(r.reference_checked);
  for (const auto& s : r.signatures) CHECK(s.reference == nullptr);
}

TEST_CASE("a wrong reference entry is reported as a mismatch") {
  TempFile wrong(
      "{\"signature\": \"H(2)\", \"component_count\": 5, \"source\": \"test\"}\n");
  const auto table = ReferenceTable::load_file(wrong.path);
  auto opt = base(PermKind::Abelian, 3);
  opt.reference = &table;
  const auto r = classify(opt);
  CHECK(r.any_mismatch());
  // H(0,0,0) has no entry in this table: absence is not an error
  CHECK(r.signatures[0].reference == nullptr);
  CHECK_FALSE(r.signatures[1].match);
}

TEST_CASE("reports are byte-stable across runs and worker counts") {
  auto opt = base(PermKind::Quadratic, 5);
  opt.workers = 1;
  const auto r1 = classify(opt);
  opt.workers = 3;
  const auto r3 = classify(opt);
  CHECK(report_json(r1) == report_json(r3));
  CHECK(report_text(r1) == report_text(r3));
}

TEST_CASE("ndjson line format is exact") {
  CHECK(ndjson_line(Permutation::parse("a a / b b")) ==
        "{\"perm\":\"a a / b b\",\"signature\":\"Q(-1,-1,-1,-1)\"}");
}

TEST_CASE("classification rejects bad options") {
  auto opt = base(PermKind::Abelian, 3);
  opt.moves = MoveSet{};
  CHECK_THROWS_AS((void)classify(opt), MalformedInput);
  opt = base(PermKind::Abelian, 20);
  CHECK_THROWS_AS((void)classify(opt), UnsupportedSize);
  opt = base(PermKind::Abelian, 3);
  opt.spec.require_mixed = true;
  CHECK_THROWS_AS((void)classify(opt), MalformedInput);
}
