#include <doctest.h>

#include "star/pipeline.hpp"
#include "star/schedule.hpp"
#include "test_support.hpp"

using namespace star;
using star::testing::fig1d;
using star::testing::read_text;

namespace {

std::string minimal(const std::string& events, const std::string& extra_data = "") {
  return R"({"name":"t","ports":[{"id":"in0","dir":"input","width":8},{"id":"out0","dir":"output","width":8}],)"
         R"("data":[{"id":"x","width":8})" + extra_data + R"(],"events":[)" + events + "]}";
}

// Residency sweep, counted after each cycle's reads and writes.
int brute_maxlive(const Schedule& s) {
  const auto lts = compute_lifetimes(s);
  Cycle horizon = 0;
  for (const auto& [id, lt] : lts) horizon = std::max(horizon, lt.tau_max());
  int peak = 0;
  for (Cycle t = 0; t <= horizon; ++t) {
    int live = 0;
    for (const auto& [id, lt] : lts) live += lt.tau_min <= t && t < lt.tau_max();
    peak = std::max(peak, live);
  }
  return peak;
}

}  // namespace

TEST_CASE("canonical constraint file parses") {
  const auto s = parse_schedule(read_text(star::testing::data_path("fig1d.json")));
  CHECK(s.name() == "fig1d");
  CHECK(s.data().size() == 6);
  CHECK(s.events().size() == 12);
  CHECK(s == fig1d());
}

TEST_CASE("minimal schedule") {
  const auto s = parse_schedule(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"write"},
                                          {"data":"x","port":"out0","cycle":1,"kind":"read"})"));
  CHECK(s.data().size() == 1);
  const auto lt = compute_lifetimes(s).at("x");
  CHECK(lt.tau_min == 0);
  CHECK(lt.tau_first() == 1);
  CHECK(lt.tau_max() == 1);
  CHECK(maxlive(s) == 1);
}

TEST_CASE("semantic errors name the offending ids") {
  auto message_of = [](const std::string& text) {
    try {
      parse_schedule(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("<accepted>");
  };

  SUBCASE("read before write") {
    const auto m = message_of(read_text(star::testing::data_path("read_before_write.json")));
    CHECK(m.find("'y'") != std::string::npos);
    CHECK(m.find("before its write") != std::string::npos);
  }
  SUBCASE("read in the write cycle") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":3,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":3,"kind":"read"})"));
    CHECK(m.find("write cycle") != std::string::npos);
  }
  SUBCASE("duplicate port-cycle") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"write"},
                                         {"data":"y","port":"in0","cycle":0,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":1,"kind":"read"},
                                         {"data":"y","port":"out0","cycle":2,"kind":"read"})",
                                      R"(,{"id":"y","width":8})"));
    CHECK(m.find("'in0'") != std::string::npos);
    CHECK(m.find("cycle 0") != std::string::npos);
  }
  SUBCASE("datum never read") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"write"})"));
    CHECK(m.find("'x' is never read") != std::string::npos);
  }
  SUBCASE("unknown port") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in9","cycle":0,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":1,"kind":"read"})"));
    CHECK(m.find("'in9'") != std::string::npos);
  }
  SUBCASE("unknown datum") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":1,"kind":"read"},
                                         {"data":"q","port":"out0","cycle":2,"kind":"read"})"));
    CHECK(m.find("'q'") != std::string::npos);
  }
  SUBCASE("write on an output port") {
    const auto m = message_of(minimal(R"({"data":"x","port":"out0","cycle":0,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":1,"kind":"read"})"));
    CHECK(m.find("output port") != std::string::npos);
  }
  SUBCASE("second write of a datum") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"write"},
                                         {"data":"x","port":"in0","cycle":1,"kind":"write"},
                                         {"data":"x","port":"out0","cycle":2,"kind":"read"})"));
    CHECK(m.find("more than once") != std::string::npos);
  }
  SUBCASE("unknown field") {
    const auto m = message_of(R"({"name":"t","ports":[],"data":[],"events":[],"mode":"x"})");
    CHECK(m.find("unknown field 'mode'") != std::string::npos);
  }
  SUBCASE("bad enum spelling") {
    const auto m = message_of(minimal(R"({"data":"x","port":"in0","cycle":0,"kind":"Write"})"));
    CHECK(m.find("kind must be") != std::string::npos);
  }
  SUBCASE("syntax error reports the line") {
    const auto m = message_of("{\n  \"ports\": [\n  ,\n}");
    CHECK(m.find("line 3") != std::string::npos);
  }
  SUBCASE("empty schedule") {
    const auto m = message_of(R"({"ports":[],"data":[],"events":[]})");
    CHECK(m.find("no data") != std::string::npos);
  }
}

TEST_CASE("lifetimes of the canonical example") {
  const auto lts = compute_lifetimes(fig1d());
  auto span = [&](const char* id) { return std::pair{lts.at(id).tau_min, lts.at(id).tau_max()}; };
  CHECK(span("a") == std::pair<Cycle, Cycle>{0, 4});
  CHECK(span("c") == std::pair<Cycle, Cycle>{1, 3});
  CHECK(span("b") == std::pair<Cycle, Cycle>{2, 8});
  CHECK(span("e") == std::pair<Cycle, Cycle>{5, 6});
  CHECK(span("f") == std::pair<Cycle, Cycle>{7, 11});
  CHECK(span("d") == std::pair<Cycle, Cycle>{9, 10});

  const auto order = chronological(lts);
  std::string ids;
  for (const auto& lt : order) ids += lt.data_id;
  CHECK(ids == "acbefd");
}

TEST_CASE("multi-read lifetime") {
  const auto s = make_schedule("m", {{"i", PortDirection::Input, 4}, {"o", PortDirection::Output, 4}}, {{"z", 4}},
                               {{"z", "o", 9, AccessKind::Read},
                                {"z", "i", 2, AccessKind::Write},
                                {"z", "o", 4, AccessKind::Read},
                                {"z", "o", 7, AccessKind::Read}});
  const auto lt = compute_lifetimes(s).at("z");
  CHECK(lt.tau_min == 2);
  CHECK(lt.tau_first() == 4);
  CHECK(lt.read_at(1) == 7);
  CHECK(lt.tau_max() == 9);
}

TEST_CASE("parallel writes order by port id") {
  const auto s = make_schedule("p",
                               {{"inB", PortDirection::Input, 1},
                                {"inA", PortDirection::Input, 1},
                                {"o", PortDirection::Output, 1}},
                               {{"first", 1}, {"second", 1}},
                               {{"first", "inB", 0, AccessKind::Write},
                                {"second", "inA", 0, AccessKind::Write},
                                {"first", "o", 1, AccessKind::Read},
                                {"second", "o", 2, AccessKind::Read}});
  const auto order = chronological(compute_lifetimes(s));
  CHECK(order[0].data_id == "second");
  CHECK(order[1].data_id == "first");
}

TEST_CASE("maxlive against a residency sweep") {
  CHECK(maxlive(fig1d()) == 3);
  CHECK(brute_maxlive(fig1d()) == 3);

  GeneratorParams p;
  p.n = 5;
  p.latency = 3;
  const auto identity = gen_schedule(GeneratorKind::Identity, p);
  CHECK(brute_maxlive(identity) == 3);
  CHECK(maxlive(identity) == 3);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto s = star::testing::random_schedule(rng, 1 + static_cast<int>(rng() % 12));
    const int m = maxlive(s);
    REQUIRE(m == brute_maxlive(s));
    CHECK(m <= static_cast<int>(s.data().size()));
  }
}

TEST_CASE("serialization round-trips and lifetimes are deterministic") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto s = star::testing::random_schedule(rng, 1 + static_cast<int>(rng() % 10));
    const auto text = schedule_to_json(s);
    const auto back = parse_schedule(text);
    CHECK(back == s);
    CHECK(schedule_to_json(back) == text);
    CHECK(compute_lifetimes(back) == compute_lifetimes(s));
  }
}
