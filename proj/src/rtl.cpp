#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "star/architecture.hpp"

namespace star {

namespace {

std::string vhdl_name(const std::string& id) {
  std::string out;
  for (char c : id) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out.front()))) out = "s_" + out;
  // VHDL forbids double and trailing underscores.
  std::string clean;
  for (char c : out) {
    if (c == '_' && !clean.empty() && clean.back() == '_') continue;
    clean += c;
  }
  if (clean.back() == '_') clean += '0';
  return clean;
}

std::string vector_type(int width) {
  return "std_logic_vector(" + std::to_string(width - 1) + " downto 0)";
}

// Source expression adapted to `width` bits.
std::string fit(const std::string& signal, int from, int to) {
  if (from == to) return signal;
  return "std_logic_vector(resize(unsigned(" + signal + "), " + std::to_string(to) + "))";
}

const char* kFifoComponent =
    "  component star_fifo is\n"
    "    generic (WIDTH : positive; DEPTH : positive);\n"
    "    port (clk  : in  std_logic;\n"
    "          rst  : in  std_logic;\n"
    "          push : in  std_logic;\n"
    "          pop  : in  std_logic;\n"
    "          din  : in  std_logic_vector(WIDTH - 1 downto 0);\n"
    "          dout : out std_logic_vector(WIDTH - 1 downto 0));\n"
    "  end component;\n";

const char* kLifoComponent =
    "  component star_lifo is\n"
    "    generic (WIDTH : positive; DEPTH : positive);\n"
    "    port (clk  : in  std_logic;\n"
    "          rst  : in  std_logic;\n"
    "          push : in  std_logic;\n"
    "          pop  : in  std_logic;\n"
    "          din  : in  std_logic_vector(WIDTH - 1 downto 0);\n"
    "          dout : out std_logic_vector(WIDTH - 1 downto 0));\n"
    "  end component;\n";

const char* kRegComponent =
    "  component star_reg is\n"
    "    generic (WIDTH : positive);\n"
    "    port (clk  : in  std_logic;\n"
    "          rst  : in  std_logic;\n"
    "          load : in  std_logic;\n"
    "          din  : in  std_logic_vector(WIDTH - 1 downto 0);\n"
    "          dout : out std_logic_vector(WIDTH - 1 downto 0));\n"
    "  end component;\n";

}  // namespace

std::string emit_rtl(const StarArchitecture& a) {
  std::ostringstream out;
  const std::string entity = "star_" + vhdl_name(a.name.empty() ? std::string("adapter") : a.name);

  std::map<std::string, const Port*> ports;
  for (const auto& p : a.ports) ports[p.id] = &p;
  // Sources feeding each storage / output port, in link order.
  std::map<std::string, std::vector<std::string>> sources;
  for (const auto& l : a.interconnect) sources[l.to].push_back(l.from);
  auto select_index = [&](const std::string& sink, const std::string& source) {
    const auto& v = sources.at(sink);
    return static_cast<int>(std::find(v.begin(), v.end(), source) - v.begin());
  };

  Cycle last_cycle = 0;
  for (const auto& op : a.control) last_cycle = std::max(last_cycle, op.cycle);

  out << "-- STAR space-time adapter '" << a.name << "'\n"
      << "-- " << a.storages.size() << " storage elements, " << a.control.size() << " control operations\n"
      << "library ieee;\n"
      << "use ieee.std_logic_1164.all;\n"
      << "use ieee.numeric_std.all;\n\n"
      << "entity " << entity << " is\n"
      << "  port (\n"
      << "    clk : in std_logic;\n"
      << "    rst : in std_logic";
  for (const auto& p : a.ports) {
    out << ";\n    " << vhdl_name(p.id) << " : " << (p.direction == PortDirection::Input ? "in  " : "out ")
        << vector_type(p.width);
  }
  out << "\n  );\nend entity " << entity << ";\n\n";

  out << "architecture structural of " << entity << " is\n";
  const auto has_kind = [&](StorageKind k) {
    return std::any_of(a.storages.begin(), a.storages.end(), [k](const auto& s) { return s.kind == k; });
  };
  if (has_kind(StorageKind::Fifo)) out << kFifoComponent;
  if (has_kind(StorageKind::Lifo)) out << kLifoComponent;
  if (has_kind(StorageKind::Register)) out << kRegComponent;
  out << '\n';

  out << "  signal cycle : natural range 0 to " << last_cycle + 1 << " := 0;\n";
  for (const auto& s : a.storages) {
    const auto n = vhdl_name(s.id);
    if (s.kind == StorageKind::Register) {
      out << "  signal " << n << "_load : std_logic;\n";
    } else {
      out << "  signal " << n << "_push, " << n << "_pop : std_logic;\n";
    }
    out << "  signal " << n << "_din, " << n << "_dout : " << vector_type(s.width) << ";\n";
    if (sources.count(s.id) && sources[s.id].size() > 1) {
      out << "  signal " << n << "_sel : natural range 0 to " << sources[s.id].size() - 1 << ";\n";
    }
  }
  for (const auto& p : a.ports) {
    if (p.direction == PortDirection::Output && sources.count(p.id) && sources[p.id].size() > 1) {
      out << "  signal " << vhdl_name(p.id) << "_sel : natural range 0 to " << sources[p.id].size() - 1 << ";\n";
    }
  }
  out << "begin\n\n";

  for (const auto& s : a.storages) {
    const auto n = vhdl_name(s.id);
    switch (s.kind) {
      case StorageKind::Fifo:
      case StorageKind::Lifo:
        out << "  u_" << n << " : " << (s.kind == StorageKind::Fifo ? "star_fifo" : "star_lifo")
            << "\n    generic map (WIDTH => " << s.width << ", DEPTH => " << s.capacity << ")\n"
            << "    port map (clk => clk, rst => rst, push => " << n << "_push, pop => " << n
            << "_pop, din => " << n << "_din, dout => " << n << "_dout);\n";
        break;
      case StorageKind::Register:
        out << "  u_" << n << " : star_reg\n    generic map (WIDTH => " << s.width << ")\n"
            << "    port map (clk => clk, rst => rst, load => " << n << "_load, din => " << n
            << "_din, dout => " << n << "_dout);\n";
        break;
    }
  }
  out << '\n';

  // Interconnect: input ports into storages, storages onto output ports.
  auto emit_mux = [&](const std::string& sink, const std::string& target, const std::string& select,
                      auto source_expr) {
    auto it = sources.find(sink);
    if (it == sources.end()) return;
    const auto& srcs = it->second;
    if (srcs.size() == 1) {
      out << "  " << target << " <= " << source_expr(srcs[0]) << ";\n";
      return;
    }
    out << "  with " << select << " select " << target << " <=\n";
    for (std::size_t i = 0; i < srcs.size(); ++i) {
      out << "    " << source_expr(srcs[i])
          << (i + 1 == srcs.size() ? " when others;\n" : " when " + std::to_string(i) + ",\n");
    }
  };
  for (const auto& s : a.storages) {
    const auto n = vhdl_name(s.id);
    emit_mux(s.id, n + "_din", n + "_sel",
             [&](const std::string& port) { return fit(vhdl_name(port), ports.at(port)->width, s.width); });
  }
  for (const auto& p : a.ports) {
    if (p.direction != PortDirection::Output) continue;
    const auto n = vhdl_name(p.id);
    if (!sources.count(p.id)) {
      out << "  " << n << " <= (others => '0');\n";
      continue;
    }
    emit_mux(p.id, n, n + "_sel", [&](const std::string& storage) {
      return fit(vhdl_name(storage) + "_dout", a.storage(storage).width, p.width);
    });
  }
  out << '\n';

  out << "  counter : process (clk)\n"
      << "  begin\n"
      << "    if rising_edge(clk) then\n"
      << "      if rst = '1' then\n"
      << "        cycle <= 0;\n"
      << "      elsif cycle < " << last_cycle + 1 << " then\n"
      << "        cycle <= cycle + 1;\n"
      << "      end if;\n"
      << "    end if;\n"
      << "  end process;\n\n";

  out << "  control : process (cycle)\n  begin\n";
  for (const auto& s : a.storages) {
    const auto n = vhdl_name(s.id);
    if (s.kind == StorageKind::Register) {
      out << "    " << n << "_load <= '0';\n";
    } else {
      out << "    " << n << "_push <= '0';\n    " << n << "_pop <= '0';\n";
    }
    if (sources.count(s.id) && sources[s.id].size() > 1) out << "    " << n << "_sel <= 0;\n";
  }
  for (const auto& p : a.ports) {
    if (p.direction == PortDirection::Output && sources.count(p.id) && sources[p.id].size() > 1) {
      out << "    " << vhdl_name(p.id) << "_sel <= 0;\n";
    }
  }
  out << "    case cycle is\n";
  for (std::size_t i = 0; i < a.control.size();) {
    const Cycle c = a.control[i].cycle;
    out << "      when " << c << " =>\n";
    for (; i < a.control.size() && a.control[i].cycle == c; ++i) {
      const auto& op = a.control[i];
      const auto n = vhdl_name(op.storage);
      out << "        -- " << to_string(op.action) << ' ' << op.data << '\n';
      switch (op.action) {
        case ControlAction::Push: out << "        " << n << "_push <= '1';\n"; break;
        case ControlAction::Load: out << "        " << n << "_load <= '1';\n"; break;
        case ControlAction::Pop: out << "        " << n << "_pop <= '1';\n"; break;
        default: break;
      }
      if (is_read_side(op.action)) {
        if (sources[op.port].size() > 1) {
          out << "        " << vhdl_name(op.port) << "_sel <= " << select_index(op.port, op.storage) << ";\n";
        }
      } else if (sources[op.storage].size() > 1) {
        out << "        " << n << "_sel <= " << select_index(op.storage, op.port) << ";\n";
      }
    }
  }
  out << "      when others =>\n        null;\n"
      << "    end case;\n"
      << "  end process;\n\n"
      << "end architecture structural;\n";
  return out.str();
}

}  // namespace star
