#include "star/optimize.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "longest_path.hpp"

namespace star {

namespace {

constexpr StorageKind kMergeOrder[] = {StorageKind::Fifo, StorageKind::Lifo, StorageKind::Register};

int kind_rank(StorageKind k) {
  return static_cast<int>(std::find(std::begin(kMergeOrder), std::end(kMergeOrder), k) -
                          std::begin(kMergeOrder));
}

using Rank = std::map<std::string, std::size_t>;

Rank chronological_rank(const Rcg& g) {
  Rank rank;
  for (std::size_t i = 0; i < g.size(); ++i) rank.emplace(g.vertices()[i].data_id, i);
  return rank;
}

std::size_t first_rank(const HierNode& n, const Rank& rank) {
  std::size_t r = static_cast<std::size_t>(-1);
  for (const auto& m : n.members) r = std::min(r, rank.at(m));
  return r;
}

void sort_by_start(std::vector<HierNode>& nodes, const Rank& rank) {
  std::sort(nodes.begin(), nodes.end(), [&](const HierNode& x, const HierNode& y) {
    return std::make_tuple(x.start(), first_rank(x, rank)) < std::make_tuple(y.start(), first_rank(y, rank));
  });
}

std::vector<std::pair<std::size_t, std::size_t>> register_edges(const std::vector<HierNode>& nodes) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i].kind == nodes[j].kind && nodes[i].start() < nodes[j].start() &&
          lifetimes_disjoint(nodes[i].lifetime, nodes[j].lifetime)) {
        edges.emplace_back(i, j);
      }
    }
  }
  return edges;
}

}  // namespace

bool lifetimes_disjoint(const std::vector<Interval>& u, const std::vector<Interval>& v) {
  for (const auto& a : u) {
    for (const auto& b : v) {
      if (a.end > b.begin && b.end > a.begin) return false;
    }
  }
  return true;
}

HierRcg build_hier_rcg(const BoundGraph& b) {
  HierRcg h;
  h.nodes = b.nodes;
  sort_by_start(h.nodes, chronological_rank(b.rcg));
  h.edges = register_edges(h.nodes);
  return h;
}

BoundGraph merge_structures(const HierRcg& h, const BoundGraph& b) {
  const Rank rank = chronological_rank(b.rcg);
  std::vector<HierNode> nodes = h.nodes;
  auto edges = h.edges;

  while (!edges.empty()) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (auto [u, v] : edges) adjacent[u][v] = true;
    std::vector<std::string> names;
    std::vector<Cycle> starts;
    for (const auto& node : nodes) {
      names.push_back(node.id);
      starts.push_back(node.start());
    }

    std::vector<std::size_t> best;
    StorageKind best_kind = StorageKind::Register;
    for (auto kind : kMergeOrder) {
      std::vector<bool> active(n);
      for (std::size_t i = 0; i < n; ++i) active[i] = nodes[i].kind == kind;
      auto path = detail::longest_dag_path(names, starts, active,
                                           [&](std::size_t u, std::size_t v) { return adjacent[u][v]; });
      if (path.size() < 2) continue;
      const bool better =
          best.empty() || path.size() > best.size() ||
          (path.size() == best.size() &&
           std::make_tuple(kind_rank(kind), starts[path[0]]) < std::make_tuple(kind_rank(best_kind), starts[best[0]]));
      if (better) {
        best = std::move(path);
        best_kind = kind;
      }
    }

    // Consecutive disjointness does not imply pairwise disjointness for
    // interval sets with gaps; keep the longest pairwise-disjoint prefix.
    std::size_t keep = 1;
    while (keep < best.size()) {
      bool ok = true;
      for (std::size_t i = 0; i < keep && ok; ++i) {
        ok = lifetimes_disjoint(nodes[best[i]].lifetime, nodes[best[keep]].lifetime);
      }
      if (!ok) break;
      ++keep;
    }
    best.resize(keep);

    HierNode merged;
    merged.id = nodes[best[0]].id;
    merged.kind = best_kind;
    merged.capacity = 0;
    for (auto i : best) {
      const auto& part = nodes[i];
      merged.members.insert(merged.members.end(), part.members.begin(), part.members.end());
      merged.lifetime.insert(merged.lifetime.end(), part.lifetime.begin(), part.lifetime.end());
      merged.capacity = std::max(merged.capacity, part.capacity);
    }
    std::sort(merged.members.begin(), merged.members.end(),
              [&](const std::string& x, const std::string& y) { return rank.at(x) < rank.at(y); });
    std::sort(merged.lifetime.begin(), merged.lifetime.end(),
              [](const Interval& x, const Interval& y) { return x.begin < y.begin; });

    std::vector<HierNode> next;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(best.begin(), best.end(), i) == best.end()) next.push_back(std::move(nodes[i]));
    }
    next.push_back(std::move(merged));
    sort_by_start(next, rank);
    nodes = std::move(next);
    edges = register_edges(nodes);
  }

  std::stable_sort(nodes.begin(), nodes.end(), [](const HierNode& x, const HierNode& y) {
    return kind_rank(x.kind) < kind_rank(y.kind);
  });
  std::map<StorageKind, int> counters;
  for (auto& node : nodes) {
    const std::string prefix = node.kind == StorageKind::Register ? "reg" : std::string(to_string(node.kind));
    node.id = prefix + std::to_string(counters[node.kind]++);
  }

  BoundGraph out;
  out.nodes = std::move(nodes);
  out.rcg = b.rcg;
  return out;
}

BoundGraph optimize(const BoundGraph& b) { return merge_structures(build_hier_rcg(b), b); }

}  // namespace star
