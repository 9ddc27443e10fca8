#include "star/binding.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "longest_path.hpp"

namespace star {

using nlohmann::json;

void validate(const GreedyConfig& cfg) {
  if ((cfg.fifo_enabled || cfg.lifo_enabled) && cfg.min_len < 2) {
    throw InputError("min_len must be at least 2 when FIFO or LIFO binding is enabled");
  }
  if (cfg.min_len < 1) throw InputError("min_len must be positive");
  if (!(cfg.fill_threshold >= 0.0 && cfg.fill_threshold <= 1.0)) {
    throw InputError("fill threshold must lie in [0, 1]");
  }
}

std::string config_to_json(const GreedyConfig& cfg) {
  json j = {{"min_len", cfg.min_len},
            {"fill", cfg.fill_threshold},
            {"fifo", cfg.fifo_enabled},
            {"lifo", cfg.lifo_enabled},
            {"priority", cfg.priority == Priority::FifoFirst ? "fifo_first" : "lifo_first"}};
  return j.dump();
}

namespace {

GreedyConfig config_from(const json& j) {
  if (!j.is_object()) throw InputError("config: expected an object");
  GreedyConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "min_len") {
      if (!value.is_number_integer()) throw InputError("config: min_len must be an integer");
      cfg.min_len = value.get<int>();
    } else if (key == "fill") {
      if (!value.is_number()) throw InputError("config: fill must be a number");
      cfg.fill_threshold = value.get<double>();
    } else if (key == "fifo" || key == "lifo") {
      if (!value.is_boolean()) throw InputError("config: " + key + " must be a boolean");
      (key == "fifo" ? cfg.fifo_enabled : cfg.lifo_enabled) = value.get<bool>();
    } else if (key == "priority") {
      const auto p = value.is_string() ? value.get<std::string>() : std::string();
      if (p == "fifo_first") {
        cfg.priority = Priority::FifoFirst;
      } else if (p == "lifo_first") {
        cfg.priority = Priority::LifoFirst;
      } else {
        throw InputError("config: priority must be \"fifo_first\" or \"lifo_first\"");
      }
    } else {
      throw InputError("config: unknown field '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

}  // namespace

GreedyConfig config_from_json(std::string_view text) {
  try {
    return config_from(json::parse(text.begin(), text.end()));
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

std::vector<GreedyConfig> configs_from_json(std::string_view text) {
  std::vector<GreedyConfig> out;
  try {
    const auto doc = json::parse(text.begin(), text.end());
    if (!doc.is_array()) throw InputError("config list: expected a JSON array");
    for (const auto& j : doc) out.push_back(config_from(j));
  } catch (const json::exception& e) {
    throw InputError(std::string("config list: ") + e.what());
  }
  if (out.empty()) throw InputError("config list is empty");
  return out;
}

std::string config_label(const GreedyConfig& cfg) {
  if (!cfg.fifo_enabled && !cfg.lifo_enabled) return "No F/L";
  std::ostringstream out;
  out << (cfg.fifo_enabled && cfg.lifo_enabled ? "F/L" : cfg.fifo_enabled ? "F" : "L")
      << " min " << cfg.min_len << " fill " << cfg.fill_threshold;
  if (cfg.fifo_enabled && cfg.lifo_enabled) {
    out << (cfg.priority == Priority::FifoFirst ? " fifo_first" : " lifo_first");
  }
  return out.str();
}

int BoundGraph::total_capacity() const {
  int total = 0;
  for (const auto& n : nodes) total += n.capacity;
  return total;
}

const HierNode* BoundGraph::node_of(const std::string& data_id) const {
  for (const auto& n : nodes) {
    if (std::find(n.members.begin(), n.members.end(), data_id) != n.members.end()) return &n;
  }
  return nullptr;
}

namespace {

std::vector<const Lifetime*> lookup(const std::vector<std::string>& path,
                                    const LifetimeMap& lifetimes) {
  std::vector<const Lifetime*> out;
  out.reserve(path.size());
  for (const auto& id : path) out.push_back(&lifetimes.at(id));
  return out;
}

Interval span_of(const std::vector<const Lifetime*>& path, CompatTag kind) {
  if (path.empty()) throw std::logic_error("structure lifetime of an empty path");
  if (kind == CompatTag::Fifo) return {path.front()->tau_min, path.back()->tau_max()};
  return {path.front()->tau_min, path.front()->tau_max()};
}

double fill_of(const std::vector<const Lifetime*>& path, int capacity, Interval span) {
  const Cycle duration = span.end - span.begin + 1;
  if (capacity < 1 || duration <= 0) throw std::logic_error("fill_factor: empty structure");
  Cycle live = 0;
  for (const auto* lt : path) {
    const Cycle lo = std::max(lt->tau_min, span.begin);
    const Cycle hi = std::min(lt->tau_max(), span.end);
    if (hi >= lo) live += hi - lo + 1;
  }
  const double f = static_cast<double>(live) / (static_cast<double>(capacity) * duration);
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace

int size_fifo(const std::vector<std::string>& path, const Rcg& g) {
  std::vector<std::size_t> idx;
  for (const auto& id : path) {
    auto i = g.index_of(id);
    if (!i) throw std::logic_error("size_fifo: '" + id + "' not in graph");
    idx.push_back(*i);
  }
  int widest = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    int incoming = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] < idx[i] && g.tag(idx[j], idx[i]) == CompatTag::Fifo) ++incoming;
    }
    widest = std::max(widest, incoming);
  }
  return 1 + widest;
}

int size_lifo(const std::vector<std::string>& path) { return static_cast<int>(path.size()); }

Interval structure_lifetime(const std::vector<std::string>& path, CompatTag kind,
                            const LifetimeMap& lifetimes) {
  return span_of(lookup(path, lifetimes), kind);
}

double fill_factor(const std::vector<std::string>& path, int capacity, Interval span,
                   const LifetimeMap& lifetimes) {
  return fill_of(lookup(path, lifetimes), capacity, span);
}

std::optional<CandidateStructure> longest_chain(const Rcg& g, CompatTag kind,
                                                const std::vector<bool>& active) {
  if (kind == CompatTag::Register) throw std::logic_error("longest_chain: register chains are not structures");
  const std::size_t n = g.size();
  std::vector<std::string> names;
  std::vector<Cycle> starts;
  for (const auto& v : g.vertices()) {
    names.push_back(v.data_id);
    starts.push_back(v.tau_min);
  }
  const std::vector<bool> mask = active.empty() ? std::vector<bool>(n, true) : active;
  auto path = detail::longest_dag_path(names, starts, mask,
                                       [&](std::size_t u, std::size_t v) { return g.tag(u, v) == kind; });
  if (path.size() < 2) return std::nullopt;

  CandidateStructure c;
  c.kind = kind;
  std::vector<const Lifetime*> lts;
  for (auto i : path) {
    c.members.push_back(names[i]);
    lts.push_back(&g.vertices()[i]);
  }
  c.capacity = kind == CompatTag::Fifo ? size_fifo(c.members, g) : size_lifo(c.members);
  c.lifetime = span_of(lts, kind);
  c.fill = fill_of(lts, c.capacity, c.lifetime);
  return c;
}

BoundGraph greedy_bind(const Rcg& g, const GreedyConfig& cfg, const LifetimeMap& lifetimes) {
  validate(cfg);
  const std::size_t n = g.size();
  std::vector<CompatTag> kinds;
  auto add_kind = [&](CompatTag k) {
    if ((k == CompatTag::Fifo && cfg.fifo_enabled) || (k == CompatTag::Lifo && cfg.lifo_enabled)) {
      kinds.push_back(k);
    }
  };
  if (cfg.priority == Priority::FifoFirst) {
    add_kind(CompatTag::Fifo);
    add_kind(CompatTag::Lifo);
  } else {
    add_kind(CompatTag::Lifo);
    add_kind(CompatTag::Fifo);
  }
  auto rank_of = [&](CompatTag k) {
    return static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), k) - kinds.begin());
  };

  // Data whose accesses failed node-level replay; they end up in registers.
  std::vector<bool> evicted(n, false);
  std::vector<HierNode> structures;
  std::vector<bool> unbound;

  bool restart = true;
  while (restart) {
    restart = false;
    structures.clear();
    unbound.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) unbound[i] = !evicted[i];

    while (!restart) {
      std::vector<CandidateStructure> candidates;
      for (auto k : kinds) {
        if (auto c = longest_chain(g, k, unbound)) candidates.push_back(std::move(*c));
      }
      std::sort(candidates.begin(), candidates.end(),
                [&](const CandidateStructure& x, const CandidateStructure& y) {
                  if (x.members.size() != y.members.size()) return x.members.size() > y.members.size();
                  if (x.kind != y.kind) return rank_of(x.kind) < rank_of(y.kind);
                  if (x.lifetime.begin != y.lifetime.begin) return x.lifetime.begin < y.lifetime.begin;
                  return x.members < y.members;
                });

      // The best candidate decides: if it fails the filters binding ends, so
      // tightening a knob can only drop structures.
      const CandidateStructure* accepted = nullptr;
      for (const auto& c : candidates) {
        if (static_cast<int>(c.members.size()) < cfg.min_len || c.fill < cfg.fill_threshold) break;
        std::vector<Lifetime> members;
        for (const auto& id : c.members) members.push_back(lifetimes.at(id));
        if (auto bad = replay_element(c.kind, c.capacity, members)) {
          evicted[*g.index_of(*bad)] = true;
          restart = true;
          break;
        }
        accepted = &c;
        break;
      }
      if (restart || accepted == nullptr) break;

      int ordinal = 0;
      for (const auto& s : structures) ordinal += s.kind == accepted->kind;
      HierNode node;
      node.id = std::string(to_string(accepted->kind)) + std::to_string(ordinal);
      node.kind = accepted->kind;
      node.members = accepted->members;
      node.capacity = accepted->capacity;
      node.lifetime = {accepted->lifetime};
      for (const auto& id : node.members) unbound[*g.index_of(id)] = false;
      structures.push_back(std::move(node));
    }
  }

  BoundGraph out;
  out.rcg = g;
  out.nodes = std::move(structures);
  int reg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!unbound[i] && !evicted[i]) continue;
    const auto& v = g.vertices()[i];
    out.nodes.push_back({"reg" + std::to_string(reg++), StorageKind::Register, {v.data_id}, 1,
                         {{v.tau_min, v.tau_max()}}});
  }
  return out;
}

std::string bound_graph_to_json(const BoundGraph& b) {
  json nodes = json::array();
  for (const auto& n : b.nodes) {
    json lt = json::array();
    for (const auto& iv : n.lifetime) lt.push_back({iv.begin, iv.end});
    nodes.push_back({{"id", n.id},
                     {"kind", to_string(n.kind)},
                     {"members", n.members},
                     {"capacity", n.capacity},
                     {"lifetime", lt}});
  }
  return json{{"nodes", nodes}}.dump(2) + "\n";
}

}  // namespace star
