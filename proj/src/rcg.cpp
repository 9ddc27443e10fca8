#include "star/rcg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace star {

Rcg::Rcg(std::vector<Lifetime> vertices, std::vector<RcgEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const std::size_t n = vertices_.size();
  matrix_.assign(n * n, -1);
  for (const auto& e : edges_) {
    if (e.from >= e.to || e.to >= n) throw std::logic_error("rcg edge not oriented chronologically");
    auto& a = matrix_[e.from * n + e.to];
    if (a != -1) throw std::logic_error("duplicate rcg edge");
    a = static_cast<signed char>(e.tag);
    matrix_[e.to * n + e.from] = a;
  }
}

std::optional<std::size_t> Rcg::index_of(const std::string& data_id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].data_id == data_id) return i;
  }
  return std::nullopt;
}

std::optional<CompatTag> Rcg::tag(std::size_t u, std::size_t v) const {
  const auto t = matrix_.at(u * vertices_.size() + v);
  if (t < 0) return std::nullopt;
  return static_cast<CompatTag>(t);
}

std::optional<CompatTag> classify_pair(const Lifetime& a, const Lifetime& b) {
  if (!chronologically_before(a, b)) {
    throw std::logic_error("classify_pair: '" + b.data_id + "' is not chronologically after '" +
                           a.data_id + "'");
  }
  // Rule 1
  if (b.tau_min >= a.tau_max()) return CompatTag::Register;
  // Rule 2
  if (b.tau_min > a.tau_min && b.tau_first() > a.tau_max() && b.tau_min < a.tau_max()) {
    return CompatTag::Fifo;
  }
  // Rule 3, nested before a's first read
  if (b.tau_min > a.tau_min && a.tau_first() > b.tau_max()) return CompatTag::Lifo;
  // Rule 3, nested between two consecutive reads of a
  for (std::size_t i = 0; i + 1 < a.reads.size(); ++i) {
    if (a.reads[i] < b.tau_min && b.tau_min < b.tau_max() && b.tau_max() < a.reads[i + 1]) {
      return CompatTag::Lifo;
    }
  }
  return std::nullopt;
}

Rcg build_rcg(const LifetimeMap& lifetimes) {
  auto vertices = chronological(lifetimes);
  std::vector<RcgEdge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (auto tag = classify_pair(vertices[i], vertices[j])) edges.push_back({i, j, *tag});
    }
  }
  return Rcg(std::move(vertices), std::move(edges));
}

std::optional<std::string> replay_element(CompatTag kind, int capacity,
                                          std::span<const Lifetime> members) {
  struct Access {
    Cycle cycle;
    bool is_write;
    bool is_final;
    std::size_t member;
  };
  std::vector<Access> accesses;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto& lt = members[m];
    accesses.push_back({lt.tau_min, true, false, m});
    for (std::size_t r = 0; r < lt.reads.size(); ++r) {
      accesses.push_back({lt.reads[r], false, r + 1 == lt.reads.size(), m});
    }
  }
  std::stable_sort(accesses.begin(), accesses.end(), [](const Access& x, const Access& y) {
    return std::tie(x.cycle, x.is_write) < std::tie(y.cycle, y.is_write);
  });

  std::deque<std::size_t> slots;  // FIFO: front() is head. LIFO: back() is top.
  const std::size_t limit =
      kind == CompatTag::Register ? 1 : static_cast<std::size_t>(std::max(capacity, 0));
  Cycle last_read = -1;
  Cycle last_write = -1;
  for (const auto& acc : accesses) {
    const auto& id = members[acc.member].data_id;
    if (acc.is_write) {
      if (acc.cycle == last_write) return id;
      last_write = acc.cycle;
      if (slots.size() >= limit) return id;
      slots.push_back(acc.member);
      continue;
    }
    if (acc.cycle == last_read) return id;
    last_read = acc.cycle;
    if (slots.empty()) return id;
    const bool from_front = kind == CompatTag::Fifo;
    const std::size_t visible = from_front ? slots.front() : slots.back();
    if (visible != acc.member) return id;
    if (acc.is_final) {
      if (from_front) {
        slots.pop_front();
      } else {
        slots.pop_back();
      }
    }
  }
  return std::nullopt;
}

bool semantic_oracle(const Lifetime& a, const Lifetime& b, CompatTag kind) {
  const Lifetime pair[] = {a, b};
  return !replay_element(kind, kind == CompatTag::Register ? 1 : 2, pair).has_value();
}

std::string dump_rcg(const Rcg& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices()) {
    out << "vertex " << v.data_id << ' ' << v.tau_min;
    for (auto r : v.reads) out << ' ' << r;
    out << '\n';
  }
  for (const auto& e : g.edges()) {
    out << g.vertices()[e.from].data_id << ' ' << g.vertices()[e.to].data_id << ' ';
    switch (e.tag) {
      case CompatTag::Register: out << "R\n"; break;
      case CompatTag::Fifo: out << "F\n"; break;
      case CompatTag::Lifo: out << "L\n"; break;
    }
  }
  return out.str();
}

}  // namespace star
