#include "star/architecture.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

namespace star {

using nlohmann::json;

std::string_view to_string(ControlAction action) {
  switch (action) {
    case ControlAction::Push: return "push";
    case ControlAction::Pop: return "pop";
    case ControlAction::Load: return "load";
    case ControlAction::ReadFront: return "read_front";
    case ControlAction::ReadTop: return "read_top";
    case ControlAction::ReadReg: return "read_reg";
  }
  return "?";
}

ControlAction parse_control_action(std::string_view text) {
  for (auto a : {ControlAction::Push, ControlAction::Pop, ControlAction::Load, ControlAction::ReadFront,
                 ControlAction::ReadTop, ControlAction::ReadReg}) {
    if (to_string(a) == text) return a;
  }
  throw InputError("unknown control action '" + std::string(text) + "'");
}

bool is_read_side(ControlAction action) {
  return action != ControlAction::Push && action != ControlAction::Load;
}

const StorageElement& StarArchitecture::storage(const std::string& id) const {
  for (const auto& s : storages) {
    if (s.id == id) return s;
  }
  throw std::out_of_range("no storage '" + id + "'");
}

int StarArchitecture::total_capacity() const {
  int total = 0;
  for (const auto& s : storages) total += s.capacity;
  return total;
}

void sort_control(std::vector<ControlOp>& control) {
  std::sort(control.begin(), control.end(), [](const ControlOp& x, const ControlOp& y) {
    return std::make_tuple(x.cycle, !is_read_side(x.action), std::cref(x.storage), std::cref(x.port)) <
           std::make_tuple(y.cycle, !is_read_side(y.action), std::cref(y.storage), std::cref(y.port));
  });
}

StarArchitecture generate_architecture(const BoundGraph& b, const Schedule& s) {
  StarArchitecture a;
  a.name = s.name();
  a.ports = s.ports();

  std::map<std::string, StorageKind> kind_of;
  for (const auto& node : b.nodes) {
    StorageElement el{node.id, node.kind, node.capacity, 1};
    for (const auto& m : node.members) {
      el.width = std::max(el.width, s.datum(m).width);
      if (!a.binding.emplace(m, node.id).second) {
        throw VerificationError("datum '" + m + "' bound to more than one storage");
      }
    }
    kind_of[node.id] = node.kind;
    a.storages.push_back(el);
  }

  const auto lifetimes = compute_lifetimes(s);
  std::set<Link> links;
  for (const auto& e : s.events()) {
    auto bound = a.binding.find(e.data_id);
    if (bound == a.binding.end()) throw VerificationError("datum '" + e.data_id + "' is not bound");
    const auto& storage = bound->second;
    const auto kind = kind_of.at(storage);
    ControlOp op{e.cycle, ControlAction::Load, storage, e.port_id, e.data_id};
    if (e.kind == AccessKind::Write) {
      op.action = kind == StorageKind::Register ? ControlAction::Load : ControlAction::Push;
      links.insert({e.port_id, storage});
    } else {
      const bool final_read = e.cycle == lifetimes.at(e.data_id).tau_max();
      switch (kind) {
        case StorageKind::Register: op.action = ControlAction::ReadReg; break;
        case StorageKind::Fifo: op.action = final_read ? ControlAction::Pop : ControlAction::ReadFront; break;
        case StorageKind::Lifo: op.action = final_read ? ControlAction::Pop : ControlAction::ReadTop; break;
      }
      links.insert({storage, e.port_id});
    }
    a.control.push_back(std::move(op));
  }
  sort_control(a.control);

  for (std::size_t i = 1; i < a.control.size(); ++i) {
    const auto& p = a.control[i - 1];
    const auto& c = a.control[i];
    if (p.cycle == c.cycle && p.storage == c.storage && is_read_side(p.action) == is_read_side(c.action)) {
      throw VerificationError("storage '" + c.storage + "' has two " +
                              (is_read_side(c.action) ? "read" : "write") + " operations at cycle " +
                              std::to_string(c.cycle) + " ('" + p.data + "', '" + c.data + "')");
    }
  }
  a.interconnect.assign(links.begin(), links.end());
  return a;
}

std::string emit_netlist(const StarArchitecture& a) {
  json doc;
  doc["format"] = 1;
  doc["name"] = a.name;
  doc["ports"] = json::array();
  for (const auto& p : a.ports) {
    doc["ports"].push_back(
        {{"id", p.id}, {"dir", p.direction == PortDirection::Input ? "input" : "output"}, {"width", p.width}});
  }
  doc["storages"] = json::array();
  for (const auto& s : a.storages) {
    doc["storages"].push_back(
        {{"id", s.id}, {"kind", to_string(s.kind)}, {"capacity", s.capacity}, {"width", s.width}});
  }
  doc["interconnect"] = json::array();
  for (const auto& l : a.interconnect) doc["interconnect"].push_back({{"from", l.from}, {"to", l.to}});
  doc["binding"] = json::object();
  for (const auto& [d, st] : a.binding) doc["binding"][d] = st;
  doc["control"] = json::array();
  for (const auto& op : a.control) {
    doc["control"].push_back({{"cycle", op.cycle},
                              {"action", to_string(op.action)},
                              {"storage", op.storage},
                              {"port", op.port},
                              {"data", op.data}});
  }
  return doc.dump(2) + "\n";
}

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw InputError("netlist " + where + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

std::string str(const json& obj, const char* name, const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_string()) throw InputError("netlist " + where + ": '" + name + "' must be a string");
  return v.get<std::string>();
}

std::int64_t integer(const json& obj, const char* name, const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_number_integer()) throw InputError("netlist " + where + ": '" + name + "' must be an integer");
  return v.get<std::int64_t>();
}

const json& array(const json& obj, const char* name) {
  const auto& v = field(obj, name, "document");
  if (!v.is_array()) throw InputError(std::string("netlist: '") + name + "' must be an array");
  return v;
}

}  // namespace

StarArchitecture load_netlist(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("netlist syntax error: ") + e.what());
  }
  if (integer(doc, "format", "document") != 1) throw InputError("netlist: unsupported format version");

  StarArchitecture a;
  a.name = str(doc, "name", "document");
  std::set<std::string> port_ids;
  for (const auto& jp : array(doc, "ports")) {
    Port p;
    p.id = str(jp, "id", "port");
    const auto dir = str(jp, "dir", "port " + p.id);
    if (dir != "input" && dir != "output") throw InputError("netlist port " + p.id + ": bad dir");
    p.direction = dir == "input" ? PortDirection::Input : PortDirection::Output;
    p.width = static_cast<int>(integer(jp, "width", "port " + p.id));
    port_ids.insert(p.id);
    a.ports.push_back(std::move(p));
  }
  std::set<std::string> storage_ids;
  for (const auto& js : array(doc, "storages")) {
    StorageElement s;
    s.id = str(js, "id", "storage");
    const std::string where = "storage " + s.id;
    s.kind = parse_storage_kind(str(js, "kind", where));
    s.capacity = static_cast<int>(integer(js, "capacity", where));
    s.width = static_cast<int>(integer(js, "width", where));
    if (s.capacity < 1 || s.width < 1) throw InputError("netlist " + where + ": capacity and width must be positive");
    if (!storage_ids.insert(s.id).second) throw InputError("netlist: duplicate storage '" + s.id + "'");
    a.storages.push_back(std::move(s));
  }
  if (a.storages.empty()) throw InputError("netlist: no storages");
  for (const auto& jl : array(doc, "interconnect")) {
    Link l{str(jl, "from", "link"), str(jl, "to", "link")};
    const bool in_link = port_ids.contains(l.from) && storage_ids.contains(l.to);
    const bool out_link = storage_ids.contains(l.from) && port_ids.contains(l.to);
    if (!in_link && !out_link) throw InputError("netlist: bad link " + l.from + " -> " + l.to);
    a.interconnect.push_back(std::move(l));
  }
  const auto& jb = field(doc, "binding", "document");
  if (!jb.is_object()) throw InputError("netlist: 'binding' must be an object");
  for (const auto& [d, st] : jb.items()) {
    if (!st.is_string() || !storage_ids.contains(st.get<std::string>())) {
      throw InputError("netlist: datum '" + d + "' bound to unknown storage");
    }
    a.binding.emplace(d, st.get<std::string>());
  }
  for (const auto& jc : array(doc, "control")) {
    ControlOp op;
    op.cycle = integer(jc, "cycle", "control op");
    op.action = parse_control_action(str(jc, "action", "control op"));
    op.storage = str(jc, "storage", "control op");
    op.port = str(jc, "port", "control op");
    op.data = str(jc, "data", "control op");
    if (!storage_ids.contains(op.storage)) throw InputError("netlist: control op on unknown storage '" + op.storage + "'");
    if (!port_ids.contains(op.port)) throw InputError("netlist: control op on unknown port '" + op.port + "'");
    a.control.push_back(std::move(op));
  }
  return a;
}

}  // namespace star
