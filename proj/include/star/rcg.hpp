#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "star/schedule.hpp"

namespace star {

struct RcgEdge {
  std::size_t from = 0;  // vertex index, earlier in chronological order
  std::size_t to = 0;
  CompatTag tag = CompatTag::Register;

  bool operator==(const RcgEdge&) const = default;
};

// Resource Compatibility Graph over data. Vertices are kept in chronological
// order, so every edge satisfies from < to and each single-tag subgraph is a
// DAG in index order.
class Rcg {
 public:
  Rcg() = default;
  Rcg(std::vector<Lifetime> vertices, std::vector<RcgEdge> edges);

  const std::vector<Lifetime>& vertices() const { return vertices_; }
  const std::vector<RcgEdge>& edges() const { return edges_; }
  std::size_t size() const { return vertices_.size(); }

  std::optional<std::size_t> index_of(const std::string& data_id) const;
  // Tag of the edge between two vertex indices (either order), if any.
  std::optional<CompatTag> tag(std::size_t u, std::size_t v) const;

  bool operator==(const Rcg& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

 private:
  std::vector<Lifetime> vertices_;
  std::vector<RcgEdge> edges_;
  std::vector<signed char> matrix_;  // -1 = no edge, else CompatTag value
};

// Applies the Register/FIFO/LIFO compatibility rules to an oriented pair.
// Throws std::logic_error if b does not come after a.
std::optional<CompatTag> classify_pair(const Lifetime& a, const Lifetime& b);

Rcg build_rcg(const LifetimeMap& lifetimes);

// Replays the accesses of `members` through one storage element of the given
// kind and capacity: insertion at tau_min, non-destructive front/top access at
// intermediate reads, removal at tau_max, reads before writes within a cycle,
// one read and one write per cycle. A Register holds a single datum whatever
// the capacity. Returns the id of the first datum whose access fails.
std::optional<std::string> replay_element(CompatTag kind, int capacity,
                                          std::span<const Lifetime> members);

// Whether a and b can share one element of `kind` (two slots for FIFO/LIFO).
bool semantic_oracle(const Lifetime& a, const Lifetime& b, CompatTag kind);

// Line-oriented debug dump: "vertex <id> <tau_min> <reads...>" then
// "<from> <to> <TAG>" per edge.
std::string dump_rcg(const Rcg& g);

}  // namespace star
