#include "star/simulator.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace star {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::DisciplineViolation: return "DisciplineViolation";
    case FailureKind::CapacityOverflow: return "CapacityOverflow";
    case FailureKind::MissingOp: return "MissingOp";
    case FailureKind::WrongCycle: return "WrongCycle";
    case FailureKind::PortConflict: return "PortConflict";
  }
  return "?";
}

std::string SimFailure::describe() const {
  std::ostringstream out;
  out << to_string(kind) << " at cycle " << cycle;
  if (!storage.empty()) out << " on storage '" << storage << "'";
  if (!data.empty()) out << " for datum '" << data << "'";
  if (!detail.empty()) out << ": " << detail;
  return out.str();
}

namespace {

struct ElementState {
  const StorageElement* element = nullptr;
  std::deque<std::string> words;  // FIFO head at front; LIFO top at back
};

bool action_fits(ControlAction action, StorageKind kind) {
  switch (action) {
    case ControlAction::Push:
    case ControlAction::Pop: return kind != StorageKind::Register;
    case ControlAction::ReadFront: return kind == StorageKind::Fifo;
    case ControlAction::ReadTop: return kind == StorageKind::Lifo;
    case ControlAction::Load:
    case ControlAction::ReadReg: return kind == StorageKind::Register;
  }
  return false;
}

}  // namespace

SimTrace simulate(const StarArchitecture& a, const Schedule& s) {
  SimTrace trace;
  auto fail = [&](FailureKind kind, Cycle cycle, std::string storage, std::string data, std::string detail) {
    trace.failure = SimFailure{kind, cycle, std::move(storage), std::move(data), std::move(detail)};
    return trace;
  };

  std::map<std::string, ElementState> state;
  for (const auto& el : a.storages) state[el.id].element = &el;

  std::map<std::pair<Cycle, std::string>, const AccessEvent*> events;
  std::set<Cycle> cycles;
  for (const auto& e : s.events()) {
    events[{e.cycle, e.port_id}] = &e;
    cycles.insert(e.cycle);
  }
  std::map<Cycle, std::vector<const ControlOp*>> ops_at;
  for (const auto& op : a.control) {
    ops_at[op.cycle].push_back(&op);
    cycles.insert(op.cycle);
  }
  const auto lifetimes = compute_lifetimes(s);

  for (Cycle c : cycles) {
    CycleRecord rec;
    rec.cycle = c;
    std::vector<const ControlOp*> ops = ops_at[c];
    std::stable_sort(ops.begin(), ops.end(), [](const ControlOp* x, const ControlOp* y) {
      return is_read_side(x->action) && !is_read_side(y->action);
    });

    // Every op must correspond to a schedule event and every event to one op.
    std::set<std::string> served_ports;
    std::set<std::pair<std::string, bool>> busy;  // (storage, read side)
    for (const auto* op : ops) {
      auto st = state.find(op->storage);
      if (st == state.end()) return fail(FailureKind::WrongCycle, c, op->storage, op->data, "unknown storage");
      auto ev = events.find({c, op->port});
      const bool read = is_read_side(op->action);
      if (ev == events.end() || ev->second->data_id != op->data ||
          (ev->second->kind == AccessKind::Read) != read) {
        return fail(FailureKind::WrongCycle, c, op->storage, op->data,
                    std::string(to_string(op->action)) + " on port '" + op->port + "' matches no schedule event");
      }
      if (!served_ports.insert(op->port).second) {
        return fail(FailureKind::PortConflict, c, op->storage, op->data, "port '" + op->port + "' driven twice");
      }
      if (!busy.insert({op->storage, read}).second) {
        return fail(FailureKind::PortConflict, c, op->storage, op->data,
                    std::string("second ") + (read ? "read" : "write") + " access in one cycle");
      }
      if (!action_fits(op->action, st->second.element->kind)) {
        return fail(FailureKind::DisciplineViolation, c, op->storage, op->data,
                    std::string(to_string(op->action)) + " on a " + std::string(to_string(st->second.element->kind)));
      }
    }
    for (const auto& [key, ev] : events) {
      if (key.first == c && !served_ports.contains(key.second)) {
        return fail(FailureKind::MissingOp, c, a.binding.count(ev->data_id) ? a.binding.at(ev->data_id) : "",
                    ev->data_id, std::string(ev->kind == AccessKind::Write ? "write" : "read") + " on port '" +
                                     key.second + "' has no control op");
      }
    }

    for (const auto* op : ops) {
      auto& el = state[op->storage];
      const auto kind = el.element->kind;
      switch (op->action) {
        case ControlAction::Pop:
        case ControlAction::ReadFront:
        case ControlAction::ReadTop:
        case ControlAction::ReadReg: {
          const bool head = kind == StorageKind::Fifo;
          if (el.words.empty() || (head ? el.words.front() : el.words.back()) != op->data) {
            return fail(FailureKind::DisciplineViolation, c, op->storage, op->data,
                        el.words.empty() ? "storage is empty"
                                         : "visible word is '" + (head ? el.words.front() : el.words.back()) + "'");
          }
          const bool retire = op->action == ControlAction::Pop ||
                              (op->action == ControlAction::ReadReg && lifetimes.at(op->data).tau_max() == c);
          if (retire) {
            if (head) {
              el.words.pop_front();
            } else {
              el.words.pop_back();
            }
          }
          rec.emitted[op->port] = op->data;
          break;
        }
        case ControlAction::Push:
        case ControlAction::Load: {
          const int limit = kind == StorageKind::Register ? 1 : el.element->capacity;
          if (static_cast<int>(el.words.size()) >= limit) {
            return fail(FailureKind::CapacityOverflow, c, op->storage, op->data,
                        "holds " + std::to_string(el.words.size()) + " of " + std::to_string(limit) + " words");
          }
          el.words.push_back(op->data);
          break;
        }
      }
      rec.ops.push_back(*op);
    }
    for (const auto& [id, el] : state) rec.occupancy[id] = static_cast<int>(el.words.size());
    trace.cycles.push_back(std::move(rec));
  }
  for (const auto& [id, el] : state) {
    if (!el.words.empty()) {
      const Cycle last = trace.cycles.empty() ? 0 : trace.cycles.back().cycle;
      return fail(FailureKind::DisciplineViolation, last, id, el.words.front(), "word never removed");
    }
  }
  return trace;
}

StarArchitecture coarse_reference(const Schedule& s) {
  StarArchitecture a;
  a.name = s.name();
  a.ports = s.ports();
  const auto order = chronological(compute_lifetimes(s));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto id = "reg" + std::to_string(i);
    a.storages.push_back({id, StorageKind::Register, 1, s.datum(order[i].data_id).width});
    a.binding[order[i].data_id] = id;
  }
  std::set<Link> links;
  for (const auto& e : s.events()) {
    const auto& reg = a.binding.at(e.data_id);
    if (e.kind == AccessKind::Write) {
      a.control.push_back({e.cycle, ControlAction::Load, reg, e.port_id, e.data_id});
      links.insert({e.port_id, reg});
    } else {
      a.control.push_back({e.cycle, ControlAction::ReadReg, reg, e.port_id, e.data_id});
      links.insert({reg, e.port_id});
    }
  }
  sort_control(a.control);
  a.interconnect.assign(links.begin(), links.end());
  return a;
}

std::map<std::string, int> occupancy_bound(const SimTrace& trace) {
  std::map<std::string, int> peak;
  for (const auto& rec : trace.cycles) {
    for (const auto& [id, words] : rec.occupancy) peak[id] = std::max(peak[id], words);
  }
  return peak;
}

std::string dump_trace(const SimTrace& trace) {
  std::ostringstream out;
  for (const auto& rec : trace.cycles) {
    for (const auto& op : rec.ops) {
      out << rec.cycle << " | " << to_string(op.action) << " | " << op.storage << " | " << op.data << " |";
      for (const auto& [id, words] : rec.occupancy) out << ' ' << id << '=' << words;
      out << '\n';
    }
  }
  out << (trace.passed() ? "PASS" : "FAIL: " + trace.failure->describe()) << '\n';
  return out.str();
}

}  // namespace star
