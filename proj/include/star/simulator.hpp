#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star/architecture.hpp"

namespace star {

enum class FailureKind { DisciplineViolation, CapacityOverflow, MissingOp, WrongCycle, PortConflict };

std::string_view to_string(FailureKind kind);

struct SimFailure {
  FailureKind kind = FailureKind::MissingOp;
  Cycle cycle = 0;
  std::string storage;
  std::string data;
  std::string detail;

  std::string describe() const;
};

struct CycleRecord {
  Cycle cycle = 0;
  std::vector<ControlOp> ops;
  std::map<std::string, int> occupancy;          // storage id -> words held after the cycle
  std::map<std::string, std::string> emitted;    // output port -> datum
};

struct SimTrace {
  std::vector<CycleRecord> cycles;
  std::optional<SimFailure> failure;

  bool passed() const { return !failure.has_value(); }
};

// Cycle-accurate replay of the control table against the schedule. Stops at
// the first failure.
SimTrace simulate(const StarArchitecture& a, const Schedule& s);

// One register per datum; always implements the schedule.
StarArchitecture coarse_reference(const Schedule& s);

// Peak words held by each storage over the trace.
std::map<std::string, int> occupancy_bound(const SimTrace& trace);

// "cycle | op | storage | datum | occupancy..." per executed op.
std::string dump_trace(const SimTrace& trace);

}  // namespace star
