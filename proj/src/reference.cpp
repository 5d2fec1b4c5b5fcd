#include "cylclasses/reference.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

namespace cylclasses {

namespace {

constexpr int kMaxTableParts = 12;

SingularityProfile make_profile(Flavor f, std::vector<int> orders) {
  SingularityProfile p;
  p.flavor = f;
  p.orders = std::move(orders);
  std::sort(p.orders.rbegin(), p.orders.rend());
  p.genus = genus(p.flavor, p.orders);
  return p;
}

void add_with_marked_variants(std::vector<ReferenceEntry>& out, Flavor f,
                              std::vector<int> orders, int count,
                              std::vector<std::string> labels,
                              const std::string& source) {
  const std::string marked_note = source + "; marked points preserve components";
  for (int zeros = 0; static_cast<int>(orders.size()) + zeros <= kMaxTableParts;
       ++zeros) {
    std::vector<int> o = orders;
    o.insert(o.end(), zeros, 0);
    ReferenceEntry e;
    e.signature = make_profile(f, std::move(o));
    e.component_count = count;
    e.labels = labels;
    e.source = zeros == 0 ? source : marked_note;
    out.push_back(std::move(e));
  }
}

// All descending order multisets with entries in [-1, cap], no zeros (zeros
// are added as marked variants elsewhere), a given sum and <= max_parts.
void gen_no_zero_multisets(int target_sum, int max_parts, int cap,
                           std::vector<int>& cur,
                           const std::function<void(const std::vector<int>&)>& emit) {
  const int parts_left = max_parts - static_cast<int>(cur.size());
  if (target_sum == 0 && !cur.empty()) emit(cur);
  if (parts_left == 0) return;
  const int hi = cur.empty() ? cap : std::min(cap, cur.back());
  for (int o = hi; o >= -1; --o) {
    if (o == 0) continue;
    // Remaining parts are <= o and >= -1: reachability pruning.
    const int rest = target_sum - o;
    const int lo_reach = -(parts_left - 1);
    const int hi_reach = (parts_left - 1) * std::max(o, 0);
    if (rest < lo_reach || rest > hi_reach) continue;
    cur.push_back(o);
    gen_no_zero_multisets(rest, max_parts, cap, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

void ReferenceTable::finalize() {
  std::sort(entries_.begin(), entries_.end(),
            [](const ReferenceEntry& a, const ReferenceEntry& b) {
              return a.signature < b.signature;
            });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].signature == entries_[i - 1].signature)
      throw MalformedReferenceFile("duplicate signature " +
                                   entries_[i].signature.str());
}

const ReferenceTable& ReferenceTable::embedded() {
  static const ReferenceTable table = [] {
    ReferenceTable t;
    t.version_ = "cylclasses-reference-1";
    auto& e = t.entries_;

    const std::string kz = "Kontsevich-Zorich, Invent. Math. 153 (2003)";
    // Genus 1 tori: H(0^k).
    for (int k = 1; k <= kMaxTableParts; ++k) {
      ReferenceEntry r;
      r.signature = make_profile(Flavor::Abelian, std::vector<int>(k, 0));
      r.component_count = 1;
      r.source = kz;
      e.push_back(std::move(r));
    }
    // Genus 2.
    add_with_marked_variants(e, Flavor::Abelian, {2}, 1, {"hyp"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {1, 1}, 1, {"hyp"}, kz);
    // Genus 3.
    add_with_marked_variants(e, Flavor::Abelian, {4}, 2, {"hyp", "odd"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {2, 2}, 2, {"hyp", "odd"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {3, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {2, 1, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {1, 1, 1, 1}, 1, {}, kz);
    // Genus 4.
    add_with_marked_variants(e, Flavor::Abelian, {6}, 3, {"hyp", "even", "odd"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {5, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {4, 2}, 2, {"even", "odd"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {3, 3}, 2, {"hyp", "nonhyp"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {2, 2, 2}, 2, {"even", "odd"}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {4, 1, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {3, 2, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {2, 2, 1, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {3, 1, 1, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {2, 1, 1, 1, 1}, 1, {}, kz);
    add_with_marked_variants(e, Flavor::Abelian, {1, 1, 1, 1, 1, 1}, 1, {}, kz);

    // Exceptional quadratic strata: a regular/irregular pair, plus a
    // hyperelliptic component for the three that lie in Lanneau's
    // hyperelliptic families.
    const std::string exc4 =
        "Zorich (extended Rauzy classes); Chen-Moller, Geom. Topol. 18 (2014)";
    const std::string exc_cm = "Chen-Moller, Geom. Topol. 18 (2014)";
    const std::string exc_cm_hyp =
        "Chen-Moller, Geom. Topol. 18 (2014); hyperelliptic component per "
        "Lanneau, Ann. Sci. ENS 41 (2008)";
    add_with_marked_variants(e, Flavor::Quadratic, {-1, 9}, 2, {"reg", "irr"}, exc4);
    add_with_marked_variants(e, Flavor::Quadratic, {-1, 3, 6}, 2, {"reg", "irr"}, exc4);
    add_with_marked_variants(e, Flavor::Quadratic, {-1, 3, 3, 3}, 2, {"reg", "irr"}, exc4);
    add_with_marked_variants(e, Flavor::Quadratic, {12}, 2, {"reg", "irr"}, exc4);
    add_with_marked_variants(e, Flavor::Quadratic, {3, 9}, 2, {"reg", "irr"}, exc_cm);
    add_with_marked_variants(e, Flavor::Quadratic, {6, 6}, 3, {"hyp", "reg", "irr"},
                             exc_cm_hyp);
    add_with_marked_variants(e, Flavor::Quadratic, {3, 3, 6}, 3, {"hyp", "reg", "irr"},
                             exc_cm_hyp);
    add_with_marked_variants(e, Flavor::Quadratic, {3, 3, 3, 3}, 3,
                             {"hyp", "reg", "irr"}, exc_cm_hyp);

    // Genus 0 quadratic strata are connected.
    const std::string lanneau0 =
        "Lanneau, Ann. Sci. ENS 41 (2008): genus 0 strata are connected";
    std::vector<int> cur;
    gen_no_zero_multisets(-4, kMaxTableParts, 16, cur,
                          [&](const std::vector<int>& orders) {
                            add_with_marked_variants(e, Flavor::Quadratic, orders,
                                                     1, {}, lanneau0);
                          });

    t.finalize();
    return t;
  }();
  return table;
}

ReferenceTable ReferenceTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedReferenceFile("cannot open \"" + path + "\"");
  ReferenceTable t;
  t.version_ = "file:" + path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ReferenceEntry entry;
    try {
      const auto j = nlohmann::json::parse(line);
      entry.signature = parse_signature(j.at("signature").get<std::string>());
      entry.component_count = j.at("component_count").get<int>();
      if (j.contains("labels"))
        entry.labels = j["labels"].get<std::vector<std::string>>();
      if (j.contains("source")) entry.source = j["source"].get<std::string>();
    } catch (const MalformedReferenceFile&) {
      throw;
    } catch (const std::exception& ex) {
      throw MalformedReferenceFile(path + ":" + std::to_string(lineno) + ": " +
                                   ex.what());
    }
    if (entry.component_count < 1)
      throw MalformedReferenceFile(path + ":" + std::to_string(lineno) +
                                   ": component_count must be >= 1");
    t.entries_.push_back(std::move(entry));
  }
  t.finalize();
  return t;
}

const ReferenceEntry* ReferenceTable::lookup(const SingularityProfile& sig) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), sig,
                             [](const ReferenceEntry& e, const SingularityProfile& s) {
                               return e.signature < s;
                             });
  if (it == entries_.end() || !(it->signature == sig)) return nullptr;
  return &*it;
}

}  // namespace cylclasses
