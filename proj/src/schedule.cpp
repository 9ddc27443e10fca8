#include "star/schedule.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace star {

using nlohmann::json;

const Port& Schedule::port(std::string_view id) const {
  for (const auto& p : ports_) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("no port '" + std::string(id) + "'");
}

const Datum& Schedule::datum(std::string_view id) const {
  for (const auto& d : data_) {
    if (d.id == id) return d;
  }
  throw std::out_of_range("no datum '" + std::string(id) + "'");
}

Schedule make_schedule(std::string name, std::vector<Port> ports,
                       std::vector<Datum> data,
                       std::vector<AccessEvent> events) {
  if (data.empty()) throw InputError("schedule has no data");

  std::map<std::string, const Port*> port_index;
  for (const auto& p : ports) {
    if (p.id.empty()) throw InputError("port with empty id");
    if (p.width <= 0) throw InputError("port '" + p.id + "': width must be positive");
    if (!port_index.emplace(p.id, &p).second) {
      throw InputError("duplicate port id '" + p.id + "'");
    }
  }
  std::map<std::string, int> write_count;
  std::map<std::string, std::vector<Cycle>> read_cycles;
  std::map<std::string, Cycle> write_cycle;
  for (const auto& d : data) {
    if (d.id.empty()) throw InputError("datum with empty id");
    if (d.width <= 0) throw InputError("datum '" + d.id + "': width must be positive");
    if (!write_count.emplace(d.id, 0).second) {
      throw InputError("duplicate datum id '" + d.id + "'");
    }
  }

  std::set<std::pair<std::string, Cycle>> port_cycles;
  for (const auto& e : events) {
    auto p = port_index.find(e.port_id);
    if (p == port_index.end()) {
      throw InputError("event for datum '" + e.data_id + "' references unknown port '" +
                       e.port_id + "'");
    }
    if (!write_count.contains(e.data_id)) {
      throw InputError("event on port '" + e.port_id + "' references unknown datum '" +
                       e.data_id + "'");
    }
    if (e.cycle < 0) {
      throw InputError("event for datum '" + e.data_id + "' has negative cycle");
    }
    if (!port_cycles.emplace(e.port_id, e.cycle).second) {
      throw InputError("duplicate event on port '" + e.port_id + "' at cycle " +
                       std::to_string(e.cycle) + " (datum '" + e.data_id + "')");
    }
    if (e.kind == AccessKind::Write) {
      if (p->second->direction != PortDirection::Input) {
        throw InputError("write of datum '" + e.data_id + "' on output port '" + e.port_id + "'");
      }
      if (++write_count[e.data_id] > 1) {
        throw InputError("datum '" + e.data_id + "' written more than once");
      }
      write_cycle[e.data_id] = e.cycle;
    } else {
      if (p->second->direction != PortDirection::Output) {
        throw InputError("read of datum '" + e.data_id + "' on input port '" + e.port_id + "'");
      }
      read_cycles[e.data_id].push_back(e.cycle);
    }
  }

  for (const auto& d : data) {
    if (write_count[d.id] == 0) throw InputError("datum '" + d.id + "' is never written");
    auto reads = read_cycles.find(d.id);
    if (reads == read_cycles.end()) throw InputError("datum '" + d.id + "' is never read");
    std::vector<Cycle> sorted = reads->second;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("datum '" + d.id + "' read twice in one cycle");
    }
    const Cycle w = write_cycle[d.id];
    if (sorted.front() < w) {
      throw InputError("datum '" + d.id + "' read at cycle " + std::to_string(sorted.front()) +
                       " before its write at cycle " + std::to_string(w));
    }
    if (sorted.front() == w) {
      throw InputError("datum '" + d.id + "' read in its write cycle " + std::to_string(w));
    }
  }

  // Canonical event order keeps equality and serialization independent of
  // the order events were listed in.
  std::sort(events.begin(), events.end(), [](const AccessEvent& a, const AccessEvent& b) {
    return std::tie(a.cycle, a.port_id) < std::tie(b.cycle, b.port_id);
  });

  Schedule s;
  s.name_ = std::move(name);
  s.ports_ = std::move(ports);
  s.data_ = std::move(data);
  s.events_ = std::move(events);
  return s;
}

namespace {

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void require_fields(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) throw InputError(std::string(where) + ": expected an object");
  for (auto field : required) {
    if (!obj.contains(field)) {
      throw InputError(std::string(where) + ": missing field '" + std::string(field) + "'");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                 std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw InputError(std::string(where) + ": unknown field '" + key + "'");
  }
}

std::string get_string(const json& obj, const char* field, std::string_view where) {
  const auto& v = obj.at(field);
  if (!v.is_string()) {
    throw InputError(std::string(where) + ": field '" + field + "' must be a string");
  }
  return v.get<std::string>();
}

std::int64_t get_int(const json& obj, const char* field, std::string_view where) {
  const auto& v = obj.at(field);
  if (!v.is_number_integer()) {
    throw InputError(std::string(where) + ": field '" + field + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

const json& get_array(const json& obj, const char* field) {
  const auto& v = obj.at(field);
  if (!v.is_array()) throw InputError(std::string("field '") + field + "' must be an array");
  return v;
}

}  // namespace

Schedule parse_schedule(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("constraint file syntax error at " + position_of(text, e.byte > 0 ? e.byte - 1 : 0) +
                     ": " + e.what());
  }
  require_fields(doc, "constraint file", {"ports", "data", "events"}, {"name"});

  std::string name;
  if (doc.contains("name")) name = get_string(doc, "name", "constraint file");

  std::vector<Port> ports;
  std::size_t i = 0;
  for (const auto& jp : get_array(doc, "ports")) {
    const std::string where = "ports[" + std::to_string(i++) + "]";
    require_fields(jp, where, {"id", "dir", "width"});
    Port p;
    p.id = get_string(jp, "id", where);
    const auto dir = get_string(jp, "dir", where);
    if (dir == "input") {
      p.direction = PortDirection::Input;
    } else if (dir == "output") {
      p.direction = PortDirection::Output;
    } else {
      throw InputError(where + ": dir must be \"input\" or \"output\", got \"" + dir + "\"");
    }
    p.width = static_cast<int>(get_int(jp, "width", where));
    ports.push_back(std::move(p));
  }

  std::vector<Datum> data;
  i = 0;
  for (const auto& jd : get_array(doc, "data")) {
    const std::string where = "data[" + std::to_string(i++) + "]";
    require_fields(jd, where, {"id", "width"});
    data.push_back({get_string(jd, "id", where), static_cast<int>(get_int(jd, "width", where))});
  }

  std::vector<AccessEvent> events;
  i = 0;
  for (const auto& je : get_array(doc, "events")) {
    const std::string where = "events[" + std::to_string(i++) + "]";
    require_fields(je, where, {"data", "port", "cycle", "kind"});
    AccessEvent e;
    e.data_id = get_string(je, "data", where);
    e.port_id = get_string(je, "port", where);
    e.cycle = get_int(je, "cycle", where);
    const auto kind = get_string(je, "kind", where);
    if (kind == "write") {
      e.kind = AccessKind::Write;
    } else if (kind == "read") {
      e.kind = AccessKind::Read;
    } else {
      throw InputError(where + ": kind must be \"write\" or \"read\", got \"" + kind + "\"");
    }
    events.push_back(std::move(e));
  }

  return make_schedule(std::move(name), std::move(ports), std::move(data), std::move(events));
}

std::string schedule_to_json(const Schedule& s) {
  json doc;
  doc["name"] = s.name();
  doc["ports"] = json::array();
  for (const auto& p : s.ports()) {
    doc["ports"].push_back(
        {{"id", p.id}, {"dir", p.direction == PortDirection::Input ? "input" : "output"}, {"width", p.width}});
  }
  doc["data"] = json::array();
  for (const auto& d : s.data()) doc["data"].push_back({{"id", d.id}, {"width", d.width}});
  doc["events"] = json::array();
  for (const auto& e : s.events()) {
    doc["events"].push_back({{"data", e.data_id},
                             {"port", e.port_id},
                             {"cycle", e.cycle},
                             {"kind", e.kind == AccessKind::Write ? "write" : "read"}});
  }
  return doc.dump(2) + "\n";
}

bool chronologically_before(const Lifetime& a, const Lifetime& b) {
  return std::tie(a.tau_min, a.write_port, a.data_id) < std::tie(b.tau_min, b.write_port, b.data_id);
}

LifetimeMap compute_lifetimes(const Schedule& s) {
  LifetimeMap out;
  for (const auto& d : s.data()) out[d.id].data_id = d.id;
  for (const auto& e : s.events()) {
    auto& lt = out.at(e.data_id);
    if (e.kind == AccessKind::Write) {
      lt.tau_min = e.cycle;
      lt.write_port = e.port_id;
    } else {
      lt.reads.push_back(e.cycle);
    }
  }
  for (auto& [id, lt] : out) std::sort(lt.reads.begin(), lt.reads.end());
  return out;
}

std::vector<Lifetime> chronological(const LifetimeMap& lifetimes) {
  std::vector<Lifetime> out;
  out.reserve(lifetimes.size());
  for (const auto& [id, lt] : lifetimes) out.push_back(lt);
  std::sort(out.begin(), out.end(), chronologically_before);
  return out;
}

int maxlive(const Schedule& s) {
  // +1 at the write cycle, -1 at the last read cycle; reads free before
  // writes, so deltas at one cycle net out before taking the maximum.
  std::map<Cycle, int> delta;
  for (const auto& [id, lt] : compute_lifetimes(s)) {
    ++delta[lt.tau_min];
    --delta[lt.tau_max()];
  }
  int live = 0;
  int peak = 0;
  for (const auto& [cycle, d] : delta) {
    live += d;
    peak = std::max(peak, live);
  }
  return peak;
}

}  // namespace star
