#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "star/common.hpp"

namespace star {

enum class PortDirection { Input, Output };
enum class AccessKind { Write, Read };

struct Port {
  std::string id;
  PortDirection direction = PortDirection::Input;
  int width = 1;

  bool operator==(const Port&) const = default;
};

struct Datum {
  std::string id;
  int width = 1;

  bool operator==(const Datum&) const = default;
};

struct AccessEvent {
  std::string data_id;
  std::string port_id;
  Cycle cycle = 0;
  AccessKind kind = AccessKind::Write;

  bool operator==(const AccessEvent&) const = default;
};

// A validated I/O access schedule. Only parse_schedule / make_schedule build
// one, so every instance satisfies the model invariants.
class Schedule {
 public:
  const std::string& name() const { return name_; }
  const std::vector<Port>& ports() const { return ports_; }
  const std::vector<Datum>& data() const { return data_; }
  const std::vector<AccessEvent>& events() const { return events_; }

  const Port& port(std::string_view id) const;
  const Datum& datum(std::string_view id) const;

  bool operator==(const Schedule&) const = default;

 private:
  friend Schedule make_schedule(std::string name, std::vector<Port> ports,
                                std::vector<Datum> data,
                                std::vector<AccessEvent> events);

  std::string name_;
  std::vector<Port> ports_;
  std::vector<Datum> data_;
  std::vector<AccessEvent> events_;
};

// Validates and assembles a schedule. Throws InputError naming the offending
// ids on any violation.
Schedule make_schedule(std::string name, std::vector<Port> ports,
                       std::vector<Datum> data,
                       std::vector<AccessEvent> events);

// Parses a JSON constraint file. Syntax errors carry line/column.
Schedule parse_schedule(std::string_view text);

// Canonical JSON text of a schedule; parse_schedule(to_json(s)) == s.
std::string schedule_to_json(const Schedule& s);

struct Lifetime {
  std::string data_id;
  std::string write_port;
  Cycle tau_min = 0;
  std::vector<Cycle> reads;  // strictly increasing, non-empty

  Cycle tau_first() const { return reads.front(); }
  Cycle tau_max() const { return reads.back(); }
  // Zero-based: read_at(0) == tau_first().
  Cycle read_at(std::size_t i) const { return reads.at(i); }

  bool operator==(const Lifetime&) const = default;
};

// Total chronological order: (tau_min, write port id, data id).
bool chronologically_before(const Lifetime& a, const Lifetime& b);

using LifetimeMap = std::map<std::string, Lifetime>;

LifetimeMap compute_lifetimes(const Schedule& s);

// Lifetimes sorted by chronologically_before.
std::vector<Lifetime> chronological(const LifetimeMap& lifetimes);

// Peak number of simultaneously resident data. A datum occupies storage from
// the end of its write cycle until its last read, which frees the slot before
// that cycle's writes.
int maxlive(const Schedule& s);

}  // namespace star
