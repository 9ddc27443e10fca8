#pragma once

#include <optional>
#include <string>
#include <vector>

#include "star/rcg.hpp"

namespace star {

// Closed cycle interval [begin, end].
struct Interval {
  Cycle begin = 0;
  Cycle end = 0;

  bool operator==(const Interval&) const = default;
};

enum class Priority { FifoFirst, LifoFirst };

struct GreedyConfig {
  int min_len = 2;
  double fill_threshold = 0.0;
  bool fifo_enabled = true;
  bool lifo_enabled = true;
  Priority priority = Priority::FifoFirst;

  bool operator==(const GreedyConfig&) const = default;
};

// Throws InputError on out-of-range knobs.
void validate(const GreedyConfig& cfg);
std::string config_to_json(const GreedyConfig& cfg);
GreedyConfig config_from_json(std::string_view text);
// A JSON array of config objects.
std::vector<GreedyConfig> configs_from_json(std::string_view text);
// Short human label, e.g. "F/L min 7 fill 0.95" or "No F/L".
std::string config_label(const GreedyConfig& cfg);

struct CandidateStructure {
  CompatTag kind = CompatTag::Fifo;
  std::vector<std::string> members;  // chronological
  int capacity = 1;
  Interval lifetime;
  double fill = 0.0;
};

struct HierNode {
  std::string id;
  StorageKind kind = StorageKind::Register;
  std::vector<std::string> members;
  int capacity = 1;
  std::vector<Interval> lifetime;  // sorted; each begins at or after the previous end

  Cycle start() const { return lifetime.front().begin; }
  bool operator==(const HierNode&) const = default;
};

struct BoundGraph {
  std::vector<HierNode> nodes;
  Rcg rcg;

  int total_capacity() const;
  const HierNode* node_of(const std::string& data_id) const;
  bool operator==(const BoundGraph&) const = default;
};

// Longest path whose consecutive edges carry `kind`, over vertices with
// active[i] set (all vertices when active is empty). Ties: earliest first
// member, then lexicographic member ids.
std::optional<CandidateStructure> longest_chain(const Rcg& g, CompatTag kind,
                                                const std::vector<bool>& active = {});

// FIFO depth: 1 + the largest number of in-path FIFO edges entering
// any one member.
int size_fifo(const std::vector<std::string>& path, const Rcg& g);
int size_lifo(const std::vector<std::string>& path);

Interval structure_lifetime(const std::vector<std::string>& path, CompatTag kind,
                            const LifetimeMap& lifetimes);

// Time-averaged member count over capacity, using inclusive [tau_min, tau_max]
// liveness; clamped to [0, 1].
double fill_factor(const std::vector<std::string>& path, int capacity, Interval span,
                   const LifetimeMap& lifetimes);

BoundGraph greedy_bind(const Rcg& g, const GreedyConfig& cfg, const LifetimeMap& lifetimes);

// Canonical JSON audit form (nodes only).
std::string bound_graph_to_json(const BoundGraph& b);

}  // namespace star
