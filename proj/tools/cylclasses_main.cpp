// cylclasses: strata, moves and move-equivalence classes of one-cylinder
// permutation data (Abelian and quadratic).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cylclasses/classify.hpp"
#include "cylclasses/enumerate.hpp"
#include "cylclasses/moves.hpp"
#include "cylclasses/orbits.hpp"
#include "cylclasses/perm.hpp"
#include "cylclasses/reference.hpp"
#include "cylclasses/strata.hpp"
#include "cylclasses/svg.hpp"
#include "cylclasses/version.hpp"

#include "../src/parallel.hpp"

namespace {

using cylclasses::Permutation;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitReferenceMismatch = 3;
constexpr int kExitResource = 4;

struct CommonState {
  int threads = 0;  // 0: CYLCLASSES_THREADS / hardware
  int workers() const {
    return threads > 0 ? threads : cylclasses::detail::default_worker_count();
  }
};

ordered_json reference_entry_json(const cylclasses::ReferenceEntry& e) {
  ordered_json j;
  j["signature"] = e.signature.str();
  j["component_count"] = e.component_count;
  j["labels"] = e.labels;
  j["source"] = e.source;
  return j;
}

int cmd_stratum(const std::string& perm_text, bool json, bool ignore_marked) {
  const Permutation p = Permutation::parse(perm_text);
  auto prof = cylclasses::singularity_profile(p);
  if (ignore_marked) prof = cylclasses::collapse_marked_points(prof);
  std::vector<std::size_t> sizes;
  for (const auto& c : cylclasses::corner_cycles(p)) sizes.push_back(c.size());
  std::sort(sizes.rbegin(), sizes.rend());

  if (json) {
    ordered_json j;
    j["perm"] = p.format();
    j["kind"] = std::string(cylclasses::kind_name(p.kind()));
    j["signature"] = prof.str();
    j["genus"] = prof.genus;
    j["corner_class_sizes"] = sizes;
    j["mixed"] = p.is_mixed();
    j["euler_check"] = cylclasses::euler_check(p);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << prof.str() << " genus " << prof.genus << "\n";
    std::cout << "corner class sizes:";
    for (auto s : sizes) std::cout << ' ' << s;
    std::cout << "\nkind: " << cylclasses::kind_name(p.kind()) << "\n";
  }
  return kExitOk;
}

cylclasses::MoveSet moves_or_default(const std::string& csv, const Permutation& p) {
  if (csv.empty()) return cylclasses::MoveSet::default_for(p.kind());
  return cylclasses::MoveSet::parse(csv);
}

int cmd_orbit(const CommonState& common, const std::string& perm_text,
              const std::string& moves_csv, std::uint64_t max_states,
              double max_seconds, bool trace, bool dump, bool json) {
  const Permutation seed = Permutation::parse(perm_text);
  const auto ms = moves_or_default(moves_csv, seed);
  cylclasses::OrbitLimits lim;
  if (max_states > 0) lim.max_states = max_states;
  if (max_seconds > 0) lim.max_seconds = max_seconds;
  const auto res =
      cylclasses::orbit_closure(seed, ms, lim, common.workers(), trace);

  ordered_json j;
  j["seed"] = seed.format();
  j["canonical_seed"] = cylclasses::decode(res.seed).format();
  j["moves"] = ms.names();
  j["members"] = res.members.size();
  j["exhausted"] = res.exhausted;
  j["states_expanded"] = res.stats.states_expanded;
  j["moves_applied"] = res.stats.moves_applied;
  j["frontier_peak"] = res.stats.frontier_peak;

  std::ostream& report_out = dump ? std::cerr : std::cout;
  if (json) {
    report_out << j.dump(2) << "\n";
  } else {
    report_out << "seed: " << seed.format() << "\n"
               << "canonical seed: " << cylclasses::decode(res.seed).format() << "\n"
               << "moves: " << ms.str() << "\n"
               << "members: " << res.members.size() << "\n"
               << "exhausted: " << (res.exhausted ? "true" : "false") << "\n"
               << "states expanded: " << res.stats.states_expanded << "\n"
               << "moves applied: " << res.stats.moves_applied << "\n"
               << "frontier peak: " << res.stats.frontier_peak << "\n";
  }
  if (dump) {
    for (const auto& key : res.members) {
      const Permutation member = cylclasses::decode(key);
      ordered_json line = ordered_json::parse(cylclasses::ndjson_line(member));
      if (trace) {
        auto path = res.path_to(key);
        ordered_json moves_json = ordered_json::array();
        for (const auto& mk : *path) moves_json.push_back(mk.str());
        line["path"] = std::move(moves_json);
      }
      std::cout << line.dump() << "\n";
    }
  }
  return kExitOk;
}

int cmd_classify(const CommonState& common, const std::string& kind_name,
                 int letters, bool mixed, const std::string& moves_csv,
                 const std::string& signature, bool ignore_marked,
                 const std::string& reference_file, bool json) {
  cylclasses::ClassifyOptions opt;
  opt.spec.kind = kind_name == "abelian" ? cylclasses::PermKind::Abelian
                                         : cylclasses::PermKind::Quadratic;
  opt.spec.letters = letters;
  opt.spec.require_mixed = mixed;
  if (!signature.empty())
    opt.spec.signature_filter = cylclasses::parse_signature(signature);
  opt.moves = moves_csv.empty()
                  ? cylclasses::MoveSet::default_for(opt.spec.kind)
                  : cylclasses::MoveSet::parse(moves_csv);
  opt.ignore_marked_points = ignore_marked;
  opt.workers = common.workers();

  cylclasses::ReferenceTable file_table;
  if (!reference_file.empty()) {
    file_table = cylclasses::ReferenceTable::load_file(reference_file);
    opt.reference = &file_table;
  }

  const auto report = cylclasses::classify(opt);
  std::cout << (json ? cylclasses::report_json(report)
                     : cylclasses::report_text(report));
  return report.reference_checked && report.any_mismatch()
             ? kExitReferenceMismatch
             : kExitOk;
}

int cmd_polygon(const std::string& perm_text, const std::string& out_path) {
  const Permutation p = Permutation::parse(perm_text);
  const std::string svg =
      cylclasses::polygon_svg(p, cylclasses::default_suspension(p));
  if (out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw cylclasses::Error("cannot open \"" + out_path + "\"");
    out << svg;
  }
  return kExitOk;
}

int cmd_reference(const std::string& signature, const std::string& reference_file,
                  bool json) {
  cylclasses::ReferenceTable file_table;
  const cylclasses::ReferenceTable* table = &cylclasses::ReferenceTable::embedded();
  if (!reference_file.empty()) {
    file_table = cylclasses::ReferenceTable::load_file(reference_file);
    table = &file_table;
  }
  if (signature.empty()) {  // dump the whole table as NDJSON
    for (const auto& e : table->entries())
      std::cout << reference_entry_json(e).dump() << "\n";
    return kExitOk;
  }
  const auto sig = cylclasses::parse_signature(signature);
  const auto* entry = table->lookup(sig);
  if (json) {
    std::cout << (entry ? reference_entry_json(*entry) : ordered_json(nullptr)).dump(2)
              << "\n";
  } else if (entry) {
    std::cout << entry->signature.str() << ": " << entry->component_count
              << " component" << (entry->component_count == 1 ? "" : "s");
    if (!entry->labels.empty()) {
      std::cout << " (";
      for (std::size_t i = 0; i < entry->labels.size(); ++i)
        std::cout << (i ? ", " : "") << entry->labels[i];
      std::cout << ")";
    }
    std::cout << "\n  source: " << entry->source << "\n";
  } else {
    std::cout << sig.str() << ": no reference\n";
  }
  return kExitOk;
}

int cmd_move(const std::string& perm_text, const std::string& move_name,
             bool canonical, bool json) {
  const Permutation p = Permutation::parse(perm_text);
  const auto mk = cylclasses::parse_move(move_name, p);
  Permutation result = cylclasses::apply_move(p, mk);
  if (canonical) result = result.canonical_form();
  if (json) {
    ordered_json j;
    j["perm"] = p.format();
    j["move"] = mk.str(p.alphabet());
    j["result"] = result.format();
    j["canonical"] = canonical;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << result.format() << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const std::string& kind_name, int letters, bool mixed,
                  const std::string& signature) {
  cylclasses::EnumerationSpec spec;
  spec.kind = kind_name == "abelian" ? cylclasses::PermKind::Abelian
                                     : cylclasses::PermKind::Quadratic;
  spec.letters = letters;
  spec.require_mixed = mixed;
  if (!signature.empty())
    spec.signature_filter = cylclasses::parse_signature(signature);
  cylclasses::UniverseEnumerator stream(spec);
  while (auto p = stream.next()) std::cout << cylclasses::ndjson_line(*p) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-cylinder permutation data: strata, elementary moves, and "
               "move-equivalence classes"};
  app.set_version_flag("--version", std::string("cylclasses ") + cylclasses::kVersion);
  app.require_subcommand(1);

  CommonState common;
  app.add_option("--threads", common.threads,
                 "worker threads (default: CYLCLASSES_THREADS or hardware)");
  // let --threads appear after a subcommand name too
  app.fallthrough();

  // stratum
  std::string st_perm;
  bool st_json = false, st_ignore_marked = false;
  auto* stratum = app.add_subcommand(
      "stratum", "signature, genus and corner classes of a permutation");
  stratum->fallthrough();
  stratum->add_option("perm", st_perm, "permutation text, e.g. \"a b c / c b a\"")
      ->required();
  stratum->add_flag("--json", st_json, "JSON output");
  stratum->add_flag("--ignore-marked-points", st_ignore_marked,
                    "collapse order-0 entries");

  // orbit
  std::string orb_perm, orb_moves;
  std::uint64_t orb_max_states = 0;
  double orb_max_seconds = 0;
  bool orb_trace = false, orb_dump = false, orb_json = false;
  auto* orbit = app.add_subcommand("orbit", "move closure from a seed permutation");
  orbit->fallthrough();
  orbit->add_option("perm", orb_perm, "seed permutation")->required();
  orbit->add_option("--moves", orb_moves,
                    "comma-separated subset of T,Tinv,Ut,Ub,S (default: all "
                    "applicable to the kind)");
  orbit->add_option("--max-states", orb_max_states, "stop after this many states");
  orbit->add_option("--max-seconds", orb_max_seconds, "wall-clock budget");
  orbit->add_flag("--trace", orb_trace, "record predecessor moves (witness paths)");
  orbit->add_flag("--dump", orb_dump,
                  "NDJSON member dump to stdout (report goes to stderr)");
  orbit->add_flag("--json", orb_json, "JSON report");

  // classify
  std::string cl_kind, cl_moves, cl_signature, cl_reference_file;
  int cl_letters = 0;
  bool cl_mixed = false, cl_ignore_marked = false, cl_json = false;
  auto* classify = app.add_subcommand(
      "classify", "partition an enumerated universe into move-equivalence classes");
  classify->fallthrough();
  classify->add_option("--kind", cl_kind, "abelian or quadratic")
      ->required()
      ->check(CLI::IsMember({"abelian", "quadratic"}));
  classify->add_option("--letters", cl_letters, "alphabet size")->required();
  classify->add_flag("--mixed", cl_mixed,
                     "report only classes containing a mixed permutation");
  classify->add_option("--moves", cl_moves, "move set (default per kind)");
  classify->add_option("--signature", cl_signature, "restrict to one stratum");
  classify->add_flag("--ignore-marked-points", cl_ignore_marked,
                     "collapse order-0 entries when aggregating");
  classify->add_option("--reference-file", cl_reference_file,
                       "NDJSON reference table overriding the embedded one");
  classify->add_flag("--json", cl_json, "JSON report");

  // polygon
  std::string pg_perm, pg_out;
  auto* polygon =
      app.add_subcommand("polygon", "SVG of the cylindrical construction");
  polygon->fallthrough();
  polygon->add_option("perm", pg_perm, "permutation text")->required();
  polygon->add_option("--out", pg_out, "output file (default: stdout)");

  // reference
  std::string rf_signature, rf_file;
  bool rf_json = false;
  auto* reference = app.add_subcommand(
      "reference", "look up known component counts (no argument: dump table)");
  reference->fallthrough();
  reference->add_option("signature", rf_signature, "stratum signature, e.g. Q(-1,9)");
  reference->add_option("--reference-file", rf_file, "NDJSON table override");
  reference->add_flag("--json", rf_json, "JSON output");

  // move
  std::string mv_perm, mv_move;
  bool mv_canonical = false, mv_json = false;
  auto* move = app.add_subcommand("move", "apply a single move");
  move->fallthrough();
  move->add_option("perm", mv_perm, "permutation text")->required();
  move->add_option("name", mv_move, "T:<letter>, Tinv:<letter>, Ut, Ub or S")
      ->required();
  move->add_flag("--canonical", mv_canonical, "canonicalize the result");
  move->add_flag("--json", mv_json, "JSON output");

  // enumerate
  std::string en_kind, en_signature;
  int en_letters = 0;
  bool en_mixed = false;
  auto* enumerate =
      app.add_subcommand("enumerate", "stream canonical permutations as NDJSON");
  enumerate->fallthrough();
  enumerate->add_option("--kind", en_kind, "abelian or quadratic")
      ->required()
      ->check(CLI::IsMember({"abelian", "quadratic"}));
  enumerate->add_option("--letters", en_letters, "alphabet size")->required();
  enumerate->add_flag("--mixed", en_mixed, "mixed permutations only");
  enumerate->add_option("--signature", en_signature, "restrict to one stratum");

  try {
    app.parse(argc, argv);
    if (stratum->parsed())
      return cmd_stratum(st_perm, st_json, st_ignore_marked);
    if (orbit->parsed())
      return cmd_orbit(common, orb_perm, orb_moves, orb_max_states,
                       orb_max_seconds, orb_trace, orb_dump, orb_json);
    if (classify->parsed())
      return cmd_classify(common, cl_kind, cl_letters, cl_mixed, cl_moves,
                          cl_signature, cl_ignore_marked, cl_reference_file,
                          cl_json);
    if (polygon->parsed()) return cmd_polygon(pg_perm, pg_out);
    if (reference->parsed()) return cmd_reference(rf_signature, rf_file, rf_json);
    if (move->parsed()) return cmd_move(mv_perm, mv_move, mv_canonical, mv_json);
    if (enumerate->parsed())
      return cmd_enumerate(en_kind, en_letters, en_mixed, en_signature);
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const cylclasses::UnsupportedSize& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const cylclasses::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
