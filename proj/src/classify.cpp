#include "cylclasses/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace cylclasses {

namespace {

using ordered_json = nlohmann::ordered_json;

struct ScanResult {
  std::vector<UniverseItem> items;
  std::vector<SingularityProfile> profiles;  // sig id -> profile
};

bool word_mixed(std::span<const std::uint8_t> w, int bar) {
  std::array<int, kMaxKeyLetters> top_count{};
  for (int i = 0; i < bar; ++i) ++top_count[w[i]];
  std::array<char, kMaxKeyLetters> seen{};
  bool tb = false, tt = false, bb = false;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    const int letter = w[i];
    if (seen[letter]) continue;
    seen[letter] = 1;
    if (top_count[letter] == 1) tb = true;
    else if (top_count[letter] == 2) tt = true;
    else bb = true;
  }
  return tb && tt && bb;
}

PermKey key_of_word_bar(std::span<const std::uint8_t> w, int bar) {
  PermKey k;
  const int total = static_cast<int>(w.size());
  k.bytes[0] = static_cast<std::uint8_t>(bar);
  k.bytes[1] = static_cast<std::uint8_t>(total - bar);
  for (int i = 0; i < bar; ++i) k.bytes[2 + i] = w[i];
  for (int i = 0; i < total - bar; ++i)  // bottom row = reversed suffix
    k.bytes[2 + bar + i] = w[total - 1 - i];
  return k;
}

struct LocalSigTable {
  std::vector<RawProfile> profs;

  std::uint16_t id_of(const RawProfile& p) {
    for (std::size_t i = 0; i < profs.size(); ++i)
      if (profs[i] == p) return static_cast<std::uint16_t>(i);
    profs.push_back(p);
    return static_cast<std::uint16_t>(profs.size() - 1);
  }
};

ScanResult scan_universe(const EnumerationSpec& spec, bool ignore_marked,
                         int workers) {
  const int n = spec.letters;
  ScanResult out;

  std::optional<SingularityProfile> collapsed_target;
  if (spec.signature_filter && ignore_marked)
    collapsed_target = collapse_marked_points(*spec.signature_filter);
  auto sig_ok = [&](const RawProfile& prof) {
    if (!spec.signature_filter) return true;
    return collapsed_target ? prof.matches_ignoring_zeros(*collapsed_target)
                            : prof.matches(*spec.signature_filter);
  };

  if (spec.kind == PermKind::Abelian) {
    LocalSigTable sigs;
    std::array<std::uint8_t, kMaxKeyLetters> top{};
    for (int i = 0; i < n; ++i) top[i] = static_cast<std::uint8_t>(i);
    std::vector<std::uint8_t> bottom(n);
    std::iota(bottom.begin(), bottom.end(), 0);
    do {
      const auto prof = raw_profile({top.data(), static_cast<std::size_t>(n)},
                                    bottom, true);
      if (!sig_ok(prof)) continue;
      UniverseItem item;
      item.sig = sigs.id_of(prof);
      item.key.bytes[0] = item.key.bytes[1] = static_cast<std::uint8_t>(n);
      for (int i = 0; i < n; ++i) {
        item.key.bytes[2 + i] = top[i];
        item.key.bytes[2 + n + i] = bottom[i];
      }
      out.items.push_back(item);
    } while (std::next_permutation(bottom.begin(), bottom.end()));
    for (const auto& p : sigs.profs) out.profiles.push_back(p.to_profile());
    return out;
  }

  // Quadratic: shard the word space by the partner of position 0.
  const int shards = 2 * n - 1;
  std::vector<std::vector<UniverseItem>> shard_items(shards);
  std::vector<LocalSigTable> shard_sigs(shards);
  detail::parallel_chunks(
      workers, static_cast<std::size_t>(shards), 1,
      [&](std::size_t shard, std::size_t, std::size_t) {
        auto& items = shard_items[shard];
        auto& sigs = shard_sigs[shard];
        std::array<std::uint8_t, 2 * kMaxKeyLetters> bottom;
        for_each_quadratic_raw(
            n, static_cast<int>(shard) + 1,
            [&](std::span<const std::uint8_t> w, int bar) {
              const int total = static_cast<int>(w.size());
              for (int i = 0; i < total - bar; ++i) bottom[i] = w[total - 1 - i];
              const auto prof = raw_profile(
                  w.subspan(0, bar),
                  {bottom.data(), static_cast<std::size_t>(total - bar)}, false);
              if (!sig_ok(prof)) return;
              UniverseItem item;
              item.sig = sigs.id_of(prof);
              if (word_mixed(w, bar)) item.flags |= UniverseItem::kMixed;
              item.key = key_of_word_bar(w, bar);
              items.push_back(item);
            });
      });

  // Merge in shard order; remap per-shard signature ids to a global table.
  std::map<RawProfile, std::uint16_t> global_ids;
  std::vector<RawProfile> global_profs;
  for (int s = 0; s < shards; ++s) {
    std::vector<std::uint16_t> remap(shard_sigs[s].profs.size());
    for (std::size_t i = 0; i < shard_sigs[s].profs.size(); ++i) {
      auto [it, inserted] = global_ids.emplace(
          shard_sigs[s].profs[i], static_cast<std::uint16_t>(global_profs.size()));
      if (inserted) global_profs.push_back(shard_sigs[s].profs[i]);
      remap[i] = it->second;
    }
    for (auto item : shard_items[s]) {
      item.sig = remap[item.sig];
      out.items.push_back(item);
    }
  }
  for (const auto& p : global_profs) out.profiles.push_back(p.to_profile());
  return out;
}

}  // namespace

bool ClassReport::any_mismatch() const {
  for (const auto& s : signatures)
    if (s.reference && !s.match) return true;
  return false;
}

std::uint64_t ClassReport::class_count() const {
  std::uint64_t total = 0;
  for (const auto& s : signatures) total += s.classes.size();
  return total;
}

ClassReport classify(const ClassifyOptions& options) {
  EnumerationSpec spec = options.spec;
  spec.validate();
  if (options.moves.empty()) throw MalformedInput("empty move set");

  // The partition runs over the full (per-signature) universe; mixedness is
  // applied at report time only.
  ScanResult scan =
      scan_universe(spec, options.ignore_marked_points, options.workers);
  auto key_classes =
      partition_engine(scan.items, options.moves, options.workers);

  const std::size_t sig_count = scan.profiles.size();
  std::vector<std::uint64_t> population(sig_count, 0), mixed_pop(sig_count, 0);
  for (const auto& item : scan.items) {
    ++population[item.sig];
    if (item.flags & UniverseItem::kMixed) ++mixed_pop[item.sig];
  }

  ClassReport report;
  report.kind = std::string(kind_name(spec.kind));
  report.letters = spec.letters;
  report.moves = options.moves.names();
  report.mixed_only = spec.require_mixed;
  report.ignore_marked_points = options.ignore_marked_points;
  if (spec.signature_filter) {
    auto sig = *spec.signature_filter;
    if (options.ignore_marked_points) sig = collapse_marked_points(sig);
    report.signature_filter = sig.str();
  }
  report.reference_checked =
      options.reference != nullptr &&
      options.moves == MoveSet::default_for(spec.kind);

  // Group classes per (possibly collapsed) signature.
  std::map<SingularityProfile, ReportSignature> blocks;
  auto block_profile = [&](std::uint16_t sig) {
    return options.ignore_marked_points
               ? collapse_marked_points(scan.profiles[sig])
               : scan.profiles[sig];
  };
  for (std::size_t sig = 0; sig < sig_count; ++sig) {
    const auto prof = block_profile(static_cast<std::uint16_t>(sig));
    auto& b = blocks[prof];
    b.signature = prof.str();
    b.population += population[sig];
    b.mixed_population += mixed_pop[sig];
  }
  struct PendingClass {
    PermKey rep;
    std::uint64_t size, mixed;
  };
  std::map<SingularityProfile, std::vector<PendingClass>> pending;
  for (const auto& kc : key_classes) {
    const auto prof = block_profile(kc.sig);
    if (kc.mixed > 0) ++blocks[prof].mixed_class_count;
    if (spec.require_mixed && kc.mixed == 0) continue;
    pending[prof].push_back({scan.items[kc.rep_index].key, kc.size, kc.mixed});
  }

  for (auto& [prof, cls] : pending) {
    std::sort(cls.begin(), cls.end(),
              [](const PendingClass& a, const PendingClass& b) { return a.rep < b.rep; });
    auto& b = blocks[prof];
    for (const auto& c : cls)
      b.classes.push_back({decode(c.rep).format(), c.size, c.mixed});
  }

  const bool quadratic = spec.kind == PermKind::Quadratic;
  for (auto& [prof, block] : blocks) {
    if (spec.require_mixed && block.mixed_population == 0) continue;
    if (report.reference_checked) {
      block.reference = options.reference->lookup(prof);
      // Components are counted by mixed classes in the quadratic case; the
      // non-mixed sub-universe is closed under the moves and over-refines.
      if (block.reference) {
        const std::uint64_t seen =
            quadratic ? block.mixed_class_count : block.classes.size();
        const bool comparable =
            quadratic ? block.mixed_population > 0 : block.population > 0;
        if (comparable)
          block.match =
              seen == static_cast<std::uint64_t>(block.reference->component_count);
      }
    }
    report.population +=
        spec.require_mixed ? block.mixed_population : block.population;
    report.signatures.push_back(std::move(block));
  }

  // An explicitly requested but unrealized signature still gets a block.
  if (spec.signature_filter && report.signatures.empty()) {
    ReportSignature empty;
    empty.signature = *report.signature_filter;
    report.signatures.push_back(std::move(empty));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string ndjson_line(const Permutation& p) {
  ordered_json j;
  j["perm"] = p.format();
  j["signature"] = singularity_profile(p).str();
  return j.dump();
}

std::string report_json(const ClassReport& r) {
  ordered_json j;
  j["kind"] = r.kind;
  j["letters"] = r.letters;
  j["moves"] = r.moves;
  j["mixed"] = r.mixed_only;
  j["ignore_marked_points"] = r.ignore_marked_points;
  if (r.signature_filter)
    j["signature_filter"] = *r.signature_filter;
  else
    j["signature_filter"] = nullptr;
  j["reference_checked"] = r.reference_checked;
  j["population"] = r.population;
  j["class_count"] = r.class_count();
  j["signatures"] = ordered_json::array();
  for (const auto& s : r.signatures) {
    ordered_json b;
    b["signature"] = s.signature;
    b["class_count"] = s.classes.size();
    b["mixed_class_count"] = s.mixed_class_count;
    b["population"] = s.population;
    b["mixed_population"] = s.mixed_population;
    b["classes"] = ordered_json::array();
    for (const auto& c : s.classes) {
      ordered_json cj;
      cj["representative"] = c.representative;
      cj["size"] = c.size;
      cj["mixed"] = c.mixed;
      b["classes"].push_back(std::move(cj));
    }
    if (s.reference) {
      ordered_json ref;
      ref["component_count"] = s.reference->component_count;
      ref["labels"] = s.reference->labels;
      ref["source"] = s.reference->source;
      ref["match"] = s.match;
      b["reference"] = std::move(ref);
    } else {
      b["reference"] = nullptr;
    }
    j["signatures"].push_back(std::move(b));
  }
  return j.dump(2) + "\n";
}

std::string report_text(const ClassReport& r) {
  std::string out;
  out += "kind: " + r.kind + "\n";
  out += "letters: " + std::to_string(r.letters) + "\n";
  std::string moves;
  for (const auto& m : r.moves) {
    if (!moves.empty()) moves += ',';
    moves += m;
  }
  out += "moves: " + moves + "\n";
  out += std::string("mixed: ") + (r.mixed_only ? "mixed-only" : "all") + "\n";
  out += std::string("marked points: ") +
         (r.ignore_marked_points ? "collapsed" : "kept") + "\n";
  out += "signature filter: " +
         (r.signature_filter ? *r.signature_filter : std::string("none")) + "\n";
  out += std::string("reference: ") +
         (r.reference_checked ? "checked" : "not checked (non-default move set)") +
         "\n";
  out += "population: " + std::to_string(r.population) + "\n";

  std::uint64_t mismatches = 0;
  for (const auto& s : r.signatures)
    if (s.reference && !s.match) ++mismatches;
  out += "signatures: " + std::to_string(r.signatures.size()) +
         ", classes: " + std::to_string(r.class_count()) +
         ", reference mismatches: " + std::to_string(mismatches) + "\n";

  for (const auto& s : r.signatures) {
    out += "\n" + s.signature + ": classes=" + std::to_string(s.classes.size()) +
           " mixed_classes=" + std::to_string(s.mixed_class_count) +
           " population=" + std::to_string(s.population) +
           " mixed=" + std::to_string(s.mixed_population);
    if (s.reference) {
      out += " reference=" + std::to_string(s.reference->component_count);
      out += s.match ? " match" : " MISMATCH";
    } else {
      out += " reference=none";
    }
    out += "\n";
    std::size_t i = 0;
    for (const auto& c : s.classes) {
      out += "  class " + std::to_string(++i) + ": size=" + std::to_string(c.size) +
             " mixed=" + std::to_string(c.mixed) + " rep: " + c.representative +
             "\n";
    }
  }
  return out;
}

}  // namespace cylclasses
