#include <doctest.h>

#include <algorithm>

#include "star/optimize.hpp"
#include "star/pipeline.hpp"
#include "star/simulator.hpp"
#include "test_support.hpp"

using namespace star;
using star::testing::fig1d;

namespace {

StarArchitecture arch_for(const Schedule& s, const GreedyConfig& cfg = {}) {
  const auto lts = compute_lifetimes(s);
  return generate_architecture(optimize(greedy_bind(build_rcg(lts), cfg, lts)), s);
}

ControlOp& op_for(StarArchitecture& a, const std::string& data, ControlAction action) {
  auto it = std::find_if(a.control.begin(), a.control.end(),
                         [&](const ControlOp& op) { return op.data == data && op.action == action; });
  REQUIRE(it != a.control.end());
  return *it;
}

}  // namespace

TEST_CASE("canonical architecture simulates cleanly") {
  const auto s = fig1d();
  const auto trace = simulate(arch_for(s), s);
  REQUIRE(trace.passed());
  const auto peak = occupancy_bound(trace);
  CHECK(peak.at("fifo0") == 2);
  CHECK(peak.at("reg0") == 1);

  // Every read event shows up on its port at its cycle.
  std::map<std::pair<Cycle, std::string>, std::string> emitted;
  for (const auto& rec : trace.cycles) {
    for (const auto& [port, d] : rec.emitted) emitted[{rec.cycle, port}] = d;
  }
  for (const auto& e : s.events()) {
    if (e.kind == AccessKind::Read) CHECK(emitted.at({e.cycle, e.port_id}) == e.data_id);
  }

  const auto dump = dump_trace(trace);
  CHECK(dump.find("2 | push | fifo0 | b | fifo0=2 reg0=1") != std::string::npos);
  CHECK(dump.substr(dump.size() - 5) == "PASS\n");
}

TEST_CASE("a one-word FIFO overflows when b arrives") {
  const auto s = fig1d();
  auto a = arch_for(s);
  a.storages[0].capacity = 1;
  const auto trace = simulate(a, s);
  REQUIRE_FALSE(trace.passed());
  CHECK(trace.failure->kind == FailureKind::CapacityOverflow);
  CHECK(trace.failure->cycle == 2);
  CHECK(trace.failure->data == "b");
  CHECK(trace.failure->storage == "fifo0");
  CHECK(trace.failure->describe().find("CapacityOverflow at cycle 2") == 0);
}

TEST_CASE("swapped pops break FIFO order") {
  const auto s = fig1d();
  auto a = arch_for(s);
  // Pop b where a is due, and a where b is due; the schedule is rewritten to match.
  std::vector<AccessEvent> events = s.events();
  for (auto& e : events) {
    if (e.kind == AccessKind::Read && e.data_id == "a") {
      e.data_id = "b";
    } else if (e.kind == AccessKind::Read && e.data_id == "b") {
      e.data_id = "a";
    }
  }
  const auto swapped = make_schedule("swapped", s.ports(), s.data(), events);
  std::swap(op_for(a, "a", ControlAction::Pop).data, op_for(a, "b", ControlAction::Pop).data);
  const auto trace = simulate(a, swapped);
  REQUIRE_FALSE(trace.passed());
  CHECK(trace.failure->kind == FailureKind::DisciplineViolation);
  CHECK(trace.failure->cycle == 4);
  CHECK(trace.failure->data == "b");
}

TEST_CASE("a dropped operation is reported") {
  const auto s = fig1d();
  auto a = arch_for(s);
  a.control.erase(std::find_if(a.control.begin(), a.control.end(), [](const ControlOp& op) { return op.data == "e"; }));
  const auto trace = simulate(a, s);
  REQUIRE_FALSE(trace.passed());
  CHECK(trace.failure->kind == FailureKind::MissingOp);
  CHECK(trace.failure->cycle == 5);
  CHECK(trace.failure->data == "e");
}

TEST_CASE("an operation at the wrong cycle is reported") {
  const auto s = fig1d();
  auto a = arch_for(s);
  op_for(a, "d", ControlAction::ReadReg).cycle = 12;
  const auto trace = simulate(a, s);
  REQUIRE_FALSE(trace.passed());
  // The read at cycle 10 goes missing first.
  CHECK(trace.failure->kind == FailureKind::MissingOp);
  CHECK(trace.failure->cycle == 10);

  auto early = arch_for(s);
  op_for(early, "f", ControlAction::Pop).port = "in0";
  const auto t2 = simulate(early, s);
  REQUIRE_FALSE(t2.passed());
  CHECK(t2.failure->kind == FailureKind::WrongCycle);
  CHECK(t2.failure->cycle == 11);
}

TEST_CASE("wrong action for the element kind") {
  const auto s = fig1d();
  auto a = arch_for(s);
  op_for(a, "c", ControlAction::Load).action = ControlAction::Push;
  const auto trace = simulate(a, s);
  REQUIRE_FALSE(trace.passed());
  CHECK(trace.failure->kind == FailureKind::DisciplineViolation);
  CHECK(trace.failure->cycle == 1);
}

TEST_CASE("a word left behind fails the run") {
  const auto s = fig1d();
  auto a = arch_for(s);
  op_for(a, "f", ControlAction::Pop).action = ControlAction::ReadFront;
  const auto trace = simulate(a, s);
  REQUIRE_FALSE(trace.passed());
  CHECK(trace.failure->data == "f");
}

TEST_CASE("coarse reference") {
  const auto s = fig1d();
  const auto ref = coarse_reference(s);
  CHECK(ref.storages.size() == 6);
  CHECK(ref.total_capacity() == 6);
  CHECK(ref.binding.at("a") == "reg0");
  CHECK(ref.binding.at("d") == "reg5");
  CHECK(simulate(ref, s).passed());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 15);
    const auto r = star::testing::random_schedule(rng, n);
    const auto coarse = coarse_reference(r);
    REQUIRE(coarse.total_capacity() == n);
    const auto t = simulate(coarse, r);
    REQUIRE(t.passed());
    for (const auto& [id, peak] : occupancy_bound(t)) REQUIRE(peak == 1);
  }
}

TEST_CASE("identity FIFO peak") {
  GeneratorParams p;
  p.n = 5;
  p.latency = 3;
  const auto s = gen_schedule(GeneratorKind::Identity, p);
  const auto trace = simulate(arch_for(s), s);
  REQUIRE(trace.passed());
  CHECK(occupancy_bound(trace).at("fifo0") == 3);
}

TEST_CASE("synthesized architectures pass and respect capacities") {
  std::mt19937_64 rng(77);
  const auto grid = default_sweep_grid();
  for (int i = 0; i < 300; ++i) {
    const auto s = star::testing::random_schedule(rng, 1 + static_cast<int>(rng() % 14));
    const auto a = arch_for(s, grid[static_cast<std::size_t>(i) % grid.size()]);
    const auto trace = simulate(a, s);
    INFO(dump_trace(trace));
    REQUIRE(trace.passed());
    for (const auto& [id, peak] : occupancy_bound(trace)) REQUIRE(peak <= a.storage(id).capacity);
    REQUIRE(a.total_capacity() >= maxlive(s));
  }
}
