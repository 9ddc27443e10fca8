// star: space-time adapter synthesis from I/O access schedules.
//
// Exit codes: 0 synthesized and simulation-verified, 1 input error,
// 2 internal verification failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "star/architecture.hpp"
#include "star/pipeline.hpp"
#include "star/simulator.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kVerificationError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw star::InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw star::InputError("cannot write '" + path + "'");
  out << text;
}

star::Schedule load_schedule(const std::string& path) {
  try {
    return star::parse_schedule(read_file(path));
  } catch (const star::InputError& e) {
    throw star::InputError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time adapter synthesis and verification"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a constraint file");
  std::string gen_kind;
  star::GeneratorParams params;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "Schedule family")
      ->required()
      ->check(CLI::IsMember({"identity", "reversal", "block", "random"}));
  gen->add_option("--n", params.n, "Number of data");
  gen->add_option("--latency", params.latency, "Identity read latency");
  gen->add_option("--rows", params.rows, "Block interleaver rows");
  gen->add_option("--cols", params.cols, "Block interleaver columns");
  gen->add_option("--offset", params.offset, "First read cycle (default: smallest legal)");
  gen->add_option("--seed", params.seed, "Random permutation seed");
  gen->add_option("--out", gen_out, "Output constraint file")->required();

  auto* synth = app.add_subcommand("synth", "Synthesize and verify an adapter");
  std::string constraints;
  star::GreedyConfig cfg;
  bool no_fifo = false;
  bool no_lifo = false;
  std::string priority = "fifo";
  std::string netlist_out;
  std::string rtl_out;
  std::string report_out;
  synth->add_option("--constraints", constraints, "Constraint file")->required();
  synth->add_option("--min-len", cfg.min_len, "Minimum FIFO/LIFO member count");
  synth->add_option("--fill", cfg.fill_threshold, "Minimum structure filling in [0,1]");
  synth->add_flag("--no-fifo", no_fifo, "Disable FIFO binding");
  synth->add_flag("--no-lifo", no_lifo, "Disable LIFO binding");
  synth->add_option("--priority", priority, "Kind preferred on ties")->check(CLI::IsMember({"fifo", "lifo"}));
  synth->add_option("--netlist", netlist_out, "Write netlist JSON");
  synth->add_option("--rtl", rtl_out, "Write structural VHDL");
  synth->add_option("--report", report_out, "Write report JSON");

  auto* sim = app.add_subcommand("simulate", "Replay a netlist against a constraint file");
  std::string sim_netlist;
  std::string sim_constraints;
  bool trace = false;
  sim->add_option("--netlist", sim_netlist, "Netlist JSON")->required();
  sim->add_option("--constraints", sim_constraints, "Constraint file")->required();
  sim->add_flag("--trace", trace, "Print the cycle trace");

  auto* sweep = app.add_subcommand("sweep", "Synthesize over a grid of binding configs");
  std::string sweep_constraints;
  std::string sweep_configs;
  std::string sweep_csv;
  sweep->add_option("--constraints", sweep_constraints, "Constraint file")->required();
  sweep->add_option("--configs", sweep_configs, "JSON array of configs")->required();
  sweep->add_option("--csv", sweep_csv, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) {
      const auto s = star::gen_schedule(star::parse_generator_kind(gen_kind), params);
      write_file(gen_out, star::schedule_to_json(s));
      std::cout << "wrote " << s.name() << " (" << s.data().size() << " data) to " << gen_out << '\n';
    } else if (*synth) {
      cfg.fifo_enabled = !no_fifo;
      cfg.lifo_enabled = !no_lifo;
      cfg.priority = priority == "lifo" ? star::Priority::LifoFirst : star::Priority::FifoFirst;
      const auto s = load_schedule(constraints);
      const auto result = star::run_synthesis(s, cfg);
      if (!netlist_out.empty()) write_file(netlist_out, star::emit_netlist(result.architecture));
      if (!rtl_out.empty()) write_file(rtl_out, star::emit_rtl(result.architecture));
      if (!report_out.empty()) write_file(report_out, star::report_to_json(result.report));
      std::cout << star::report_table({result.report});
    } else if (*sim) {
      const auto arch = star::load_netlist(read_file(sim_netlist));
      const auto s = load_schedule(sim_constraints);
      const auto t = star::simulate(arch, s);
      if (trace) std::cout << star::dump_trace(t);
      if (!t.passed()) {
        std::cerr << "simulation failed: " << t.failure->describe() << '\n';
        return kVerificationError;
      }
      std::cout << "simulation passed: " << arch.storages.size() << " storages, " << arch.control.size()
                << " control ops\n";
    } else if (*sweep) {
      const auto s = load_schedule(sweep_constraints);
      const auto configs = star::configs_from_json(read_file(sweep_configs));
      std::vector<star::Report> reports;
      for (const auto& c : configs) reports.push_back(star::run_synthesis(s, c).report);
      write_file(sweep_csv, star::report_csv(reports));
      std::cout << star::report_table(reports);
    }
  } catch (const star::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const star::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerificationError;
  }
  return kOk;
}
