#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "star/architecture.hpp"
#include "star/binding.hpp"
#include "star/schedule.hpp"
#include "star/simulator.hpp"

namespace star {

enum class GeneratorKind { Identity, Reversal, Block, Random };

GeneratorKind parse_generator_kind(std::string_view text);

// Unused fields are ignored by the selected generator. A negative offset asks
// for the smallest offset that keeps every read after its write.
struct GeneratorParams {
  int n = 8;
  int latency = 1;
  int rows = 4;
  int cols = 4;
  std::int64_t offset = -1;
  std::uint64_t seed = 1;
  int width = 8;
};

// Single input port "in0", single output port "out0", data "d<i>" written at
// cycle i. Throws InputError on invalid parameters.
Schedule gen_schedule(GeneratorKind kind, const GeneratorParams& params);

struct Report {
  std::string schedule;
  int n_data = 0;
  int reference_capacity = 0;
  int final_capacity = 0;
  int saved = 0;
  int ctrl = 0;
  int maxlive = 0;
  Cycle makespan = 0;
  Cycle max_residency = 0;
  double throughput = 0.0;  // data words per cycle
  GreedyConfig config;

  bool operator==(const Report&) const = default;
};

std::string report_to_json(const Report& r);

struct SynthesisResult {
  BoundGraph bound;      // after greedy binding
  BoundGraph optimized;  // after structure merging
  StarArchitecture architecture;
  SimTrace trace;
  Report report;
};

// Full flow: RCG, greedy binding, merging, architecture generation, then a
// mandatory simulation gate. Throws VerificationError (with the trace dump)
// when the generated architecture does not implement the schedule.
SynthesisResult run_synthesis(const Schedule& s, const GreedyConfig& cfg);

// Aligned text table, one row per report.
std::string report_table(const std::vector<Report>& reports);
std::string report_csv(const std::vector<Report>& reports);

// Configurations covering the binding knobs: no F/L, permissive F/L, each
// priority, single-kind, and the min-length/filling pairs from the reference
// experiments.
std::vector<GreedyConfig> default_sweep_grid();

}  // namespace star
