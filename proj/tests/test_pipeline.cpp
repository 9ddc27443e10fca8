#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "star/pipeline.hpp"
#include "test_support.hpp"

using namespace star;
using star::testing::fig1d;

namespace {

std::vector<std::pair<std::string, Cycle>> accesses(const Schedule& s, AccessKind kind) {
  std::vector<std::pair<std::string, Cycle>> out;
  for (const auto& e : s.events()) {
    if (e.kind == kind) out.emplace_back(e.data_id, e.cycle);
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted && ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("identity generator") {
  GeneratorParams p;
  p.n = 3;
  p.latency = 1;
  const auto s = gen_schedule(GeneratorKind::Identity, p);
  CHECK(s.name() == "identity_n3_L1");
  using V = std::vector<std::pair<std::string, Cycle>>;
  CHECK(accesses(s, AccessKind::Write) == V{{"d0", 0}, {"d1", 1}, {"d2", 2}});
  CHECK(accesses(s, AccessKind::Read) == V{{"d0", 1}, {"d1", 2}, {"d2", 3}});
}

TEST_CASE("reversal generator") {
  GeneratorParams p;
  p.n = 3;
  const auto s = gen_schedule(GeneratorKind::Reversal, p);
  using V = std::vector<std::pair<std::string, Cycle>>;
  CHECK(accesses(s, AccessKind::Read) == V{{"d2", 3}, {"d1", 4}, {"d0", 5}});
}

TEST_CASE("block generator reads column-major") {
  GeneratorParams p;
  p.rows = 2;
  p.cols = 3;
  p.offset = 6;
  const auto s = gen_schedule(GeneratorKind::Block, p);
  using V = std::vector<std::pair<std::string, Cycle>>;
  CHECK(accesses(s, AccessKind::Write) == V{{"d0", 0}, {"d1", 1}, {"d2", 2}, {"d3", 3}, {"d4", 4}, {"d5", 5}});
  CHECK(accesses(s, AccessKind::Read) == V{{"d0", 6}, {"d3", 7}, {"d1", 8}, {"d4", 9}, {"d2", 10}, {"d5", 11}});

  // Default offset is the smallest legal one: d3 (written at 3) is read second.
  p.offset = -1;
  const auto tight = gen_schedule(GeneratorKind::Block, p);
  CHECK(tight.name() == "block_2x3_o3");
  CHECK(accesses(tight, AccessKind::Read).front() == std::pair<std::string, Cycle>{"d0", 3});
}

TEST_CASE("random generator is a seeded permutation") {
  GeneratorParams p;
  p.n = 20;
  p.seed = 4;
  const auto a = gen_schedule(GeneratorKind::Random, p);
  CHECK(a == gen_schedule(GeneratorKind::Random, p));
  std::set<std::string> read;
  for (const auto& [d, c] : accesses(a, AccessKind::Read)) read.insert(d);
  CHECK(read.size() == 20);
  p.seed = 5;
  CHECK_FALSE(accesses(a, AccessKind::Read) == accesses(gen_schedule(GeneratorKind::Random, p), AccessKind::Read));
}

TEST_CASE("invalid generator parameters") {
  GeneratorParams p;
  p.latency = 0;
  CHECK_THROWS_AS(gen_schedule(GeneratorKind::Identity, p), InputError);
  p = {};
  p.n = 0;
  CHECK_THROWS_AS(gen_schedule(GeneratorKind::Reversal, p), InputError);
  p = {};
  p.rows = 4;
  p.cols = 4;
  p.offset = 2;
  CHECK_THROWS_AS(gen_schedule(GeneratorKind::Block, p), InputError);
  p.offset = 13;
  CHECK_NOTHROW(gen_schedule(GeneratorKind::Block, p));
  CHECK_THROWS_AS(parse_generator_kind("spiral"), InputError);
}

TEST_CASE("canonical synthesis report") {
  const auto r = run_synthesis(fig1d(), {}).report;
  CHECK(r.schedule == "fig1d");
  CHECK(r.n_data == 6);
  CHECK(r.reference_capacity == 6);
  CHECK(r.final_capacity == 3);
  CHECK(r.saved == 3);
  CHECK(r.ctrl == 2);
  CHECK(r.maxlive == 3);
  CHECK(r.makespan == 12);
  CHECK(r.max_residency == 6);
  CHECK(r.throughput == doctest::Approx(0.5));

  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j.at("saved") == 3);
  CHECK(j.at("config").at("priority") == "fifo_first");
}

TEST_CASE("reversal and identity reports") {
  GeneratorParams p;
  p.n = 8;
  const auto rev = run_synthesis(gen_schedule(GeneratorKind::Reversal, p), {}).report;
  CHECK(rev.ctrl == 1);
  CHECK(rev.final_capacity == 8);
  CHECK(rev.saved == 0);
  CHECK(rev.maxlive == 8);

  p.n = 10;
  p.latency = 3;
  const auto id = run_synthesis(gen_schedule(GeneratorKind::Identity, p), {}).report;
  CHECK(id.ctrl == 1);
  CHECK(id.final_capacity == 3);
  CHECK(id.saved == 7);
}

TEST_CASE("invalid config is an input error") {
  CHECK_THROWS_AS(run_synthesis(fig1d(), {1, 0.0, true, true, Priority::FifoFirst}), InputError);
  CHECK_THROWS_AS(run_synthesis(fig1d(), {2, 1.5, true, true, Priority::FifoFirst}), InputError);
}

TEST_CASE("report table and CSV") {
  std::vector<Report> reports;
  const GreedyConfig none{2, 0.0, false, false, Priority::FifoFirst};
  for (const auto& cfg : {none, GreedyConfig{}, GreedyConfig{3, 0.5, true, true, Priority::LifoFirst}}) {
    reports.push_back(run_synthesis(fig1d(), cfg).report);
  }
  reports[0].schedule = "fig1d, \"quoted\"";

  const auto table = report_table(reports);
  std::istringstream lines(table);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 5);
  CHECK(all[0].find("schedule") == 0);
  CHECK(all[2].find("No F/L") != std::string::npos);
  for (const auto& l : all) CHECK(l.size() == all[1].size());

  const auto rows = parse_csv(report_csv(reports));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].size() == 15);
  CHECK(rows[0][10] == "ctrl");
  CHECK(rows[1][0] == "fig1d, \"quoted\"");
  // With no FIFO/LIFO, the merged registers are the structures to control.
  CHECK(rows[1][10] == "3");
  CHECK(rows[1][3] == "0");
  CHECK(rows[2][10] == "2");
  CHECK(rows[3][5] == "lifo_first");
  for (const auto& row : rows) CHECK(row.size() == 15);
}

TEST_CASE("sweep grid covers both knobs") {
  const auto grid = default_sweep_grid();
  CHECK(grid.size() == 8);
  CHECK(config_label(grid[0]) == "No F/L");
  for (const auto& cfg : grid) CHECK_NOTHROW(validate(cfg));
  for (const auto& cfg : grid) CHECK(config_from_json(config_to_json(cfg)) == cfg);
}

TEST_CASE("synthesis is deterministic") {
  GeneratorParams p;
  p.rows = 5;
  p.cols = 6;
  const auto s = gen_schedule(GeneratorKind::Block, p);
  for (const auto& cfg : default_sweep_grid()) {
    const auto x = run_synthesis(s, cfg);
    const auto y = run_synthesis(s, cfg);
    CHECK(emit_netlist(x.architecture) == emit_netlist(y.architecture));
    CHECK(emit_rtl(x.architecture) == emit_rtl(y.architecture));
    CHECK(report_to_json(x.report) == report_to_json(y.report));
  }
}
