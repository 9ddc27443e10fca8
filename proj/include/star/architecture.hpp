#pragma once

#include <map>
#include <string>
#include <vector>

#include "star/binding.hpp"
#include "star/schedule.hpp"

namespace star {

struct StorageElement {
  std::string id;
  StorageKind kind = StorageKind::Register;
  int capacity = 1;
  int width = 1;

  bool operator==(const StorageElement&) const = default;
};

enum class ControlAction { Push, Pop, Load, ReadFront, ReadTop, ReadReg };

std::string_view to_string(ControlAction action);
ControlAction parse_control_action(std::string_view text);
// Pop and the read_* actions drive an output port; push and load consume an input.
bool is_read_side(ControlAction action);

struct ControlOp {
  Cycle cycle = 0;
  ControlAction action = ControlAction::Load;
  std::string storage;
  std::string port;
  std::string data;

  bool operator==(const ControlOp&) const = default;
};

// Directed link: input port -> storage, or storage -> output port.
struct Link {
  std::string from;
  std::string to;

  auto operator<=>(const Link&) const = default;
};

struct StarArchitecture {
  std::string name;
  std::vector<Port> ports;
  std::vector<StorageElement> storages;
  std::vector<Link> interconnect;           // sorted, unique
  std::vector<ControlOp> control;           // canonical order, see sort_control
  std::map<std::string, std::string> binding;  // data id -> storage id

  const StorageElement& storage(const std::string& id) const;
  int total_capacity() const;
  bool operator==(const StarArchitecture&) const = default;
};

// Cycle, then read-side before write-side, then storage id, then port.
void sort_control(std::vector<ControlOp>& control);

// Throws VerificationError if two ops hit the same storage port in one cycle.
StarArchitecture generate_architecture(const BoundGraph& b, const Schedule& s);

// Canonical netlist JSON, "format": 1.
std::string emit_netlist(const StarArchitecture& a);
// Throws InputError on malformed documents.
StarArchitecture load_netlist(std::string_view text);

// Structural VHDL text: storage components, interconnect muxes, and a
// cycle-counter FSM driving the control table.
std::string emit_rtl(const StarArchitecture& a);

}  // namespace star
