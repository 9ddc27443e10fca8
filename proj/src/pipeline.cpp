#include "star/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "star/optimize.hpp"
#include "star/rcg.hpp"

namespace star {

using nlohmann::json;

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "identity") return GeneratorKind::Identity;
  if (text == "reversal") return GeneratorKind::Reversal;
  if (text == "block") return GeneratorKind::Block;
  if (text == "random") return GeneratorKind::Random;
  throw InputError("unknown generator kind '" + std::string(text) + "'");
}

namespace {

std::string datum_name(int i) { return "d" + std::to_string(i); }

// Smallest read offset that keeps every read strictly after its write, or
// `requested` when it is valid.
std::int64_t resolve_offset(const std::vector<int>& read_order, std::int64_t requested) {
  std::int64_t min_offset = 1;
  for (std::size_t p = 0; p < read_order.size(); ++p) {
    min_offset = std::max<std::int64_t>(min_offset, read_order[p] - static_cast<std::int64_t>(p) + 1);
  }
  if (requested < 0) return min_offset;
  if (requested < min_offset) {
    throw InputError("read offset " + std::to_string(requested) +
                     " reads a datum before its write; minimum is " + std::to_string(min_offset));
  }
  return requested;
}

// read_order[p] = index of the datum read at position p. Datum i is written at
// cycle i and read at offset + p.
Schedule from_read_order(std::string name, const std::vector<int>& read_order, std::int64_t offset,
                         int width) {
  const int n = static_cast<int>(read_order.size());
  std::vector<Port> ports{{"in0", PortDirection::Input, width}, {"out0", PortDirection::Output, width}};
  std::vector<Datum> data;
  std::vector<AccessEvent> events;
  for (int i = 0; i < n; ++i) {
    data.push_back({datum_name(i), width});
    events.push_back({datum_name(i), "in0", i, AccessKind::Write});
  }
  for (int p = 0; p < n; ++p) {
    events.push_back({datum_name(read_order[p]), "out0", offset + p, AccessKind::Read});
  }
  return make_schedule(std::move(name), std::move(ports), std::move(data), std::move(events));
}

}  // namespace

Schedule gen_schedule(GeneratorKind kind, const GeneratorParams& params) {
  if (params.width < 1) throw InputError("width must be positive");
  switch (kind) {
    case GeneratorKind::Identity: {
      if (params.n < 1) throw InputError("identity: n must be positive");
      if (params.latency < 1) throw InputError("identity: latency must be at least 1");
      std::vector<Port> ports{{"in0", PortDirection::Input, params.width},
                              {"out0", PortDirection::Output, params.width}};
      std::vector<Datum> data;
      std::vector<AccessEvent> events;
      for (int i = 0; i < params.n; ++i) {
        data.push_back({datum_name(i), params.width});
        events.push_back({datum_name(i), "in0", i, AccessKind::Write});
        events.push_back({datum_name(i), "out0", i + params.latency, AccessKind::Read});
      }
      return make_schedule("identity_n" + std::to_string(params.n) + "_L" + std::to_string(params.latency),
                           std::move(ports), std::move(data), std::move(events));
    }
    case GeneratorKind::Reversal: {
      if (params.n < 1) throw InputError("reversal: n must be positive");
      std::vector<int> order(params.n);
      for (int p = 0; p < params.n; ++p) order[p] = params.n - 1 - p;
      return from_read_order("reversal_n" + std::to_string(params.n), order, params.n, params.width);
    }
    case GeneratorKind::Block: {
      if (params.rows < 1 || params.cols < 1) throw InputError("block: rows and cols must be positive");
      std::vector<int> order;
      for (int c = 0; c < params.cols; ++c) {
        for (int r = 0; r < params.rows; ++r) order.push_back(r * params.cols + c);
      }
      const auto offset = resolve_offset(order, params.offset);
      return from_read_order("block_" + std::to_string(params.rows) + "x" + std::to_string(params.cols) + "_o" +
                                 std::to_string(offset),
                             order, offset, params.width);
    }
    case GeneratorKind::Random: {
      if (params.n < 1) throw InputError("random: n must be positive");
      std::vector<int> order(params.n);
      std::iota(order.begin(), order.end(), 0);
      // Explicit Fisher-Yates on the raw engine output: std::shuffle and the
      // standard distributions are not reproducible across library vendors.
      std::mt19937_64 rng(params.seed);
      for (int i = params.n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
      }
      const auto offset = resolve_offset(order, params.offset);
      return from_read_order("random_n" + std::to_string(params.n) + "_s" + std::to_string(params.seed) + "_o" +
                                 std::to_string(offset),
                             order, offset, params.width);
    }
  }
  throw InputError("unknown generator kind");
}

std::string report_to_json(const Report& r) {
  json j = {{"schedule", r.schedule},
            {"n", r.n_data},
            {"reference_capacity", r.reference_capacity},
            {"capacity", r.final_capacity},
            {"saved", r.saved},
            {"ctrl", r.ctrl},
            {"maxlive", r.maxlive},
            {"makespan", r.makespan},
            {"max_residency", r.max_residency},
            {"throughput", r.throughput},
            {"config", json::parse(config_to_json(r.config))}};
  return j.dump(2) + "\n";
}

SynthesisResult run_synthesis(const Schedule& s, const GreedyConfig& cfg) {
  validate(cfg);
  SynthesisResult out;
  const auto lifetimes = compute_lifetimes(s);
  const auto rcg = build_rcg(lifetimes);
  out.bound = greedy_bind(rcg, cfg, lifetimes);
  out.optimized = optimize(out.bound);
  out.architecture = generate_architecture(out.optimized, s);
  out.trace = simulate(out.architecture, s);
  if (!out.trace.passed()) {
    throw VerificationError("generated architecture for '" + s.name() + "' failed simulation: " +
                            out.trace.failure->describe() + "\n" + dump_trace(out.trace));
  }

  auto& r = out.report;
  r.schedule = s.name();
  r.n_data = static_cast<int>(s.data().size());
  r.reference_capacity = r.n_data;
  r.final_capacity = out.architecture.total_capacity();
  r.saved = r.reference_capacity - r.final_capacity;
  r.ctrl = static_cast<int>(out.architecture.storages.size());
  r.maxlive = maxlive(s);
  Cycle first_write = lifetimes.begin()->second.tau_min;
  Cycle last_read = 0;
  for (const auto& [id, lt] : lifetimes) {
    first_write = std::min(first_write, lt.tau_min);
    last_read = std::max(last_read, lt.tau_max());
    r.max_residency = std::max(r.max_residency, lt.tau_max() - lt.tau_min);
  }
  r.makespan = last_read - first_write + 1;
  r.throughput = static_cast<double>(r.n_data) / static_cast<double>(r.makespan);
  r.config = cfg;
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::vector<std::vector<std::string>> rows_of(const std::vector<Report>& reports) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.schedule, config_label(r.config), std::to_string(r.n_data),
                    std::to_string(r.reference_capacity), std::to_string(r.final_capacity),
                    std::to_string(r.saved), std::to_string(r.ctrl), std::to_string(r.maxlive),
                    std::to_string(r.makespan), std::to_string(r.max_residency), fixed(r.throughput, 4)});
  }
  return rows;
}

const std::vector<std::string> kColumns = {"schedule", "config", "n",        "reference", "capacity",  "saved",
                                           "ctrl",     "maxlive", "makespan", "max_residency", "throughput"};

}  // namespace

std::string report_table(const std::vector<Report>& reports) {
  const auto rows = rows_of(reports);
  std::vector<std::size_t> width(kColumns.size());
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    width[c] = kColumns[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      // Text columns left-aligned, numbers right-aligned.
      if (c < 2) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    out << '\n';
  };
  line(kColumns);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows) line(row);
  return out.str();
}

std::string report_csv(const std::vector<Report>& reports) {
  auto quote = [](const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char ch : cell) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream out;
  out << "schedule,min_len,fill,fifo,lifo,priority,n,reference,capacity,saved,ctrl,maxlive,makespan,"
         "max_residency,throughput\n";
  for (const auto& r : reports) {
    out << quote(r.schedule) << ',' << r.config.min_len << ',' << fixed(r.config.fill_threshold, 2) << ','
        << (r.config.fifo_enabled ? 1 : 0) << ',' << (r.config.lifo_enabled ? 1 : 0) << ','
        << (r.config.priority == Priority::FifoFirst ? "fifo_first" : "lifo_first") << ',' << r.n_data << ','
        << r.reference_capacity << ',' << r.final_capacity << ',' << r.saved << ',' << r.ctrl << ','
        << r.maxlive << ',' << r.makespan << ',' << r.max_residency << ',' << fixed(r.throughput, 4) << '\n';
  }
  return out.str();
}

std::vector<GreedyConfig> default_sweep_grid() {
  return {
      {2, 0.0, false, false, Priority::FifoFirst},
      {2, 0.0, true, true, Priority::FifoFirst},
      {2, 0.0, true, true, Priority::LifoFirst},
      {2, 0.0, true, false, Priority::FifoFirst},
      {2, 0.0, false, true, Priority::FifoFirst},
      {3, 0.5, true, true, Priority::FifoFirst},
      {7, 0.95, true, true, Priority::FifoFirst},
      {15, 0.90, true, true, Priority::FifoFirst},
  };
}

}  // namespace star
