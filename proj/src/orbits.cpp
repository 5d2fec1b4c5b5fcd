#include "cylclasses/orbits.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "cylclasses/spill.hpp"
#include "parallel.hpp"

namespace cylclasses {

namespace {

using Clock = std::chrono::steady_clock;

struct ClosureOutcome {
  OrbitResult result;
  bool target_found = false;
};

ClosureOutcome closure_impl(const PermKey& seed, const MoveSet& ms,
                            const OrbitLimits& lim, int workers, bool trace,
                            const std::optional<PermKey>& target) {
  ClosureOutcome out;
  OrbitResult& res = out.result;
  res.seed = seed;
  res.traced = trace;
  res.exhausted = true;

  const auto deadline =
      lim.max_seconds ? std::optional(Clock::now() +
                                      std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double>(*lim.max_seconds)))
                      : std::nullopt;
  auto out_of_time = [&] { return deadline && Clock::now() > *deadline; };

  std::unordered_set<PermKey, PermKeyHash> seen;
  seen.insert(seed);
  if (target && seed == *target) out.target_found = true;

  auto frontier = std::make_unique<SpillableKeys>(lim.frontier_mem_keys);
  frontier->push(seed);
  res.stats.frontier_peak = 1;

  using Edge = std::pair<PermKey, MoveKind>;
  constexpr std::size_t kChunk = 512;

  bool stop = false;
  while (!frontier->empty() && !stop && !(target && out.target_found)) {
    if (out_of_time()) {
      res.exhausted = false;
      break;
    }
    auto next = std::make_unique<SpillableKeys>(lim.frontier_mem_keys);

    frontier->visit_blocks([&](std::span<const PermKey> block) {
      if (stop) return;
      const std::size_t chunks = (block.size() + kChunk - 1) / kChunk;
      // children per chunk: (parent, move, child)
      std::vector<std::vector<std::pair<Edge, PermKey>>> produced(chunks);
      detail::parallel_chunks(
          workers, block.size(), kChunk,
          [&](std::size_t chunk, std::size_t b, std::size_t e) {
            thread_local MoveWorkspace ws;
            std::array<std::pair<PermKey, MoveKind>, kMaxNeighbors> buf;
            auto& sink = produced[chunk];
            for (std::size_t i = b; i < e; ++i) {
              const int cnt = neighbor_keys(block[i], ms, ws, buf.data());
              for (int j = 0; j < cnt; ++j)
                sink.emplace_back(Edge{block[i], buf[j].second}, buf[j].first);
            }
          });
      res.stats.states_expanded += block.size();
      for (auto& chunk : produced) {
        for (auto& [edge, child] : chunk) {
          ++res.stats.moves_applied;
          if (seen.contains(child)) continue;
          if (lim.max_states && seen.size() >= *lim.max_states) {
            res.exhausted = false;
            stop = true;
            break;
          }
          seen.insert(child);
          if (trace) res.parents.emplace(child, edge);
          if (target && child == *target) out.target_found = true;
          next->push(child);
        }
        if (stop) break;
      }
      if (out_of_time()) {
        res.exhausted = false;
        stop = true;
      }
    });

    res.stats.frontier_peak = std::max(res.stats.frontier_peak, next->size());
    frontier = std::move(next);
  }
  if (target && out.target_found) {
    // Early exit on success leaves the closure unfinished by design.
    res.exhausted = frontier->empty();
  }

  res.members.assign(seen.begin(), seen.end());
  std::sort(res.members.begin(), res.members.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// OrbitResult
// ---------------------------------------------------------------------------

bool OrbitResult::contains(const PermKey& k) const {
  return std::binary_search(members.begin(), members.end(), k);
}

std::optional<std::vector<MoveKind>> OrbitResult::path_to(
    const PermKey& target) const {
  if (!traced || !contains(target)) return std::nullopt;
  std::vector<MoveKind> path;
  PermKey at = target;
  while (!(at == seed)) {
    auto it = parents.find(at);
    if (it == parents.end())
      throw InternalInvariantViolation("broken parent chain in orbit trace");
    path.push_back(it->second.second);
    at = it->second.first;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Permutation replay_path(const Permutation& seed,
                        const std::vector<MoveKind>& path) {
  Permutation at = seed.canonical_form();
  for (MoveKind mk : path) at = apply_move(at, mk).canonical_form();
  return at;
}

OrbitResult orbit_closure(const Permutation& seed, const MoveSet& ms,
                          const OrbitLimits& lim, int workers, bool trace) {
  if (ms.empty()) throw MalformedInput("empty move set");
  return closure_impl(encode(seed.canonical_form()), ms, lim, workers, trace,
                      std::nullopt)
      .result;
}

std::string_view tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

Tri same_class(const Permutation& p, const Permutation& q, const MoveSet& ms,
               const OrbitLimits& lim, int workers) {
  if (p.letters() != q.letters())
    throw MalformedInput("permutations have different alphabet sizes");
  const PermKey kp = encode(p.canonical_form());
  const PermKey kq = encode(q.canonical_form());
  if (kp == kq) return Tri::Yes;
  if (!(singularity_profile(p) == singularity_profile(q))) return Tri::No;
  auto outcome = closure_impl(kp, ms, lim, workers, false, kq);
  if (outcome.target_found) return Tri::Yes;
  return outcome.result.exhausted ? Tri::No : Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Partition engine
// ---------------------------------------------------------------------------

std::vector<KeyClass> partition_engine(std::vector<UniverseItem>& items,
                                       const MoveSet& ms, int workers) {
  if (ms.empty()) throw MalformedInput("empty move set");
  std::sort(items.begin(), items.end(),
            [](const UniverseItem& a, const UniverseItem& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < items.size(); ++i)
    if (items[i].key == items[i - 1].key)
      throw MalformedInput("universe contains duplicates");

  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  std::vector<std::uint32_t> parent(n), rank(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::mutex uf_mu;
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (items[a].sig != items[b].sig)
      throw InternalInvariantViolation("move changed the stratum signature");
    if (rank[a] < rank[b]) std::swap(a, b);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
  };

  auto locate = [&](const PermKey& k) -> std::uint32_t {
    auto it = std::lower_bound(
        items.begin(), items.end(), k,
        [](const UniverseItem& a, const PermKey& key) { return a.key < key; });
    if (it == items.end() || !(it->key == k))
      throw InternalInvariantViolation(
          "neighbor left the enumerated universe (universe must be closed)");
    return static_cast<std::uint32_t>(it - items.begin());
  };

  constexpr std::size_t kChunk = 1024;
  detail::parallel_chunks(
      workers, items.size(), kChunk,
      [&](std::size_t, std::size_t b, std::size_t e) {
        thread_local MoveWorkspace ws;
        std::array<std::pair<PermKey, MoveKind>, kMaxNeighbors> buf;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        edges.reserve((e - b) * 8);
        for (std::size_t i = b; i < e; ++i) {
          const int cnt = neighbor_keys(items[i].key, ms, ws, buf.data());
          for (int j = 0; j < cnt; ++j)
            edges.emplace_back(static_cast<std::uint32_t>(i), locate(buf[j].first));
        }
        std::scoped_lock lk(uf_mu);
        for (auto [a, b2] : edges) unite(a, b2);
      });

  // Classes in representative (= first member = least key) order.
  std::vector<std::int32_t> class_of(n, -1);
  std::vector<KeyClass> classes;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t root = find(i);
    if (class_of[root] < 0) {
      class_of[root] = static_cast<std::int32_t>(classes.size());
      classes.push_back(KeyClass{i, 0, 0, items[i].sig});
    }
    KeyClass& c = classes[static_cast<std::size_t>(class_of[root])];
    ++c.size;
    if (items[i].flags & UniverseItem::kMixed) ++c.mixed;
    if (items[i].sig != c.sig)
      throw InternalInvariantViolation("class members disagree on signature");
  }
  return classes;
}

OrbitPartition partition(const std::vector<Permutation>& universe,
                         const MoveSet& ms, int workers) {
  std::map<SingularityProfile, std::uint16_t> sig_ids;
  std::vector<SingularityProfile> profiles;
  std::vector<UniverseItem> items;
  items.reserve(universe.size());
  for (const auto& p : universe) {
    if (!p.is_canonical())
      throw MalformedInput("partition universe must contain canonical forms");
    UniverseItem it;
    it.key = encode(p);
    const auto prof = singularity_profile(p);
    auto [pos, inserted] =
        sig_ids.emplace(prof, static_cast<std::uint16_t>(profiles.size()));
    if (inserted) profiles.push_back(prof);
    it.sig = pos->second;
    if (p.is_mixed()) it.flags |= UniverseItem::kMixed;
    items.push_back(it);
  }

  auto key_classes = partition_engine(items, ms, workers);
  OrbitPartition out;
  out.classes.reserve(key_classes.size());
  for (const auto& kc : key_classes) {
    OrbitClass c{decode(items[kc.rep_index].key), kc.size, kc.mixed,
                 profiles[kc.sig]};
    out.classes.push_back(std::move(c));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const OrbitClass& a, const OrbitClass& b) {
              if (!(a.signature == b.signature)) return a.signature < b.signature;
              return encode(a.representative) < encode(b.representative);
            });
  return out;
}

}  // namespace cylclasses
