// Copyright 2026 The Shuttle Nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// shuttle: validate maps, run scenarios, export plot data.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "shuttle/roadmap.hpp"
#include "shuttle/sim/metrics.hpp"
#include "shuttle/sim/simulator.hpp"

namespace fs = std::filesystem;
using namespace shuttle;

namespace {

constexpr const char* kOutDirEnv = "SHUTTLE_OUT_DIR";

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? env : "shuttle_out";
}

// Writes to a sibling temporary and renames, so readers never see a
// partial file.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_validate_map(const std::string& path) {
  try {
    const auto map = roadmap::load_roadmap_file(path);
    const auto problems = roadmap::check_invariants(map);
    if (!problems.empty()) {
      for (const auto& p : problems) std::cerr << path << ": " << p << "\n";
      return 1;
    }
  } catch (const roadmap::MapError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << path << ": " << d << "\n";
    return 1;
  }
  std::cout << path << ": ok\n";
  return 0;
}

struct RunArgs {
  std::vector<std::string> scenarios;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;
  std::string format{"table"};
};

int cmd_run(const RunArgs& args) {
  sim::RunOptions opt;
  opt.seed = args.seed;
  if (!args.config.empty()) {
    try {
      opt.config = nlohmann::json::parse(read_text(args.config));
    } catch (const std::exception& e) {
      std::cerr << args.config << ": " << e.what() << "\n";
      return 2;
    }
  }
  const fs::path out_dir = args.out.empty() ? fs::path(default_out_dir()) : fs::path(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << out_dir.string() << ": " << ec.message() << "\n";
    return 2;
  }

  bool all_ok = true;
  std::vector<std::pair<std::string, sim::MetricsReport>> rows;
  nlohmann::ordered_json machine = nlohmann::ordered_json::array();
  std::vector<std::string> status_lines;
  for (const auto& path : args.scenarios) {
    const std::string stem = fs::path(path).stem().string();
    try {
      const auto sc = sim::load_scenario_file(path);
      const auto log = sim::run_scenario(sc, opt);
      const auto metrics = sim::compute_metrics(log);
      const std::string digest = log.digest();
      write_atomic(out_dir / (stem + ".log.jsonl"), log.to_jsonl());
      nlohmann::ordered_json summary;
      summary["scenario"] = log.scenario;
      summary["seed"] = log.seed;
      summary["status"] = std::string(sim::to_string(log.status));
      summary["reason"] = log.reason;
      summary["digest"] = digest;
      summary["metrics"] = sim::to_json(metrics);
      write_atomic(out_dir / (stem + ".summary.json"), summary.dump(2) + "\n");
      const bool ok = log.status == sim::TerminalStatus::kGoalReached;
      all_ok = all_ok && ok;
      rows.emplace_back(stem, metrics);
      machine.push_back(summary);
      status_lines.push_back(std::string(ok ? "  " : "! ") + stem + "  " +
                             std::string(sim::to_string(log.status)) + "  digest " + digest);
    } catch (const std::exception& e) {
      all_ok = false;
      std::cerr << path << ": " << e.what() << "\n";
      nlohmann::ordered_json failed;
      failed["scenario"] = stem;
      failed["status"] = "Invalid";
      failed["error"] = e.what();
      machine.push_back(failed);
      status_lines.push_back("! " + stem + "  Invalid");
    }
  }
  if (args.format == "machine") {
    std::cout << machine.dump(2) << "\n";
  } else {
    std::cout << sim::format_table(rows) << "\n";
    for (const auto& l : status_lines) std::cout << l << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_plotdata(const std::string& log_path, const std::string& out) {
  sim::SimLog log;
  try {
    log = sim::parse_log(read_text(log_path));
  } catch (const std::exception& e) {
    std::cerr << log_path << ": " << e.what() << "\n";
    return 1;
  }
  const fs::path dir = out.empty() ? fs::path(default_out_dir()) : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string stem = fs::path(log_path).stem().stem().string();

  std::map<int, int> hist;
  std::ostringstream sd, aj, hs;
  sd << "distance_m,speed_kmh\n";
  aj << "t,accel,jerk\n";
  double dist = 0.0;
  const double dt = log.control_dt;
  for (std::size_t k = 0; k < log.ticks.size(); ++k) {
    const auto& r = log.ticks[k];
    if (k > 0) dist += std::hypot(r.x - log.ticks[k - 1].x, r.y - log.ticks[k - 1].y);
    if (r.v > sim::kDrivingSpeed) ++hist[static_cast<int>(std::floor(r.v * 3.6))];
    sd << dist << "," << r.v * 3.6 << "\n";
    if (k + 1 < log.ticks.size()) {
      const double a = (log.ticks[k + 1].v - r.v) / dt;
      aj << r.t << "," << a << ",";
      if (k + 2 < log.ticks.size()) {
        const double a2 = (log.ticks[k + 2].v - log.ticks[k + 1].v) / dt;
        aj << (a2 - a) / dt;
      }
      aj << "\n";
    }
  }
  hs << "bin_lo_kmh,bin_hi_kmh,count\n";
  for (const auto& [bin, count] : hist) hs << bin << "," << bin + 1 << "," << count << "\n";
  try {
    write_atomic(dir / (stem + ".speed_hist.csv"), hs.str());
    write_atomic(dir / (stem + ".speed_distance.csv"), sd.str());
    write_atomic(dir / (stem + ".accel_jerk.csv"), aj.str());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote plot data for " << stem << " to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Campus shuttle navigation stack"};
  app.require_subcommand(1);

  std::string map_path;
  auto* validate = app.add_subcommand("validate-map", "Load a road map and check its invariants");
  validate->add_option("path", map_path, "Map file")->required();

  RunArgs run_args;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run scenarios and report metrics");
  run->add_option("scenarios", run_args.scenarios, "Scenario files")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", run_args.out,
                  std::string("Output directory (default $") + kOutDirEnv + " or shuttle_out)");
  run->add_option("--config", run_args.config, "Configuration overlay file");
  run->add_option("--format", run_args.format, "Report format")
      ->check(CLI::IsMember({"table", "machine"}));

  std::string log_path, plot_out;
  auto* plot = app.add_subcommand("plotdata", "Export plot-ready series from a log");
  plot->add_option("log", log_path, "Log file")->required();
  plot->add_option("--out", plot_out, "Output directory");

  CLI11_PARSE(app, argc, argv);
  if (*validate) return cmd_validate_map(map_path);
  if (*run) {
    if (*seed_opt) run_args.seed = seed;
    return cmd_run(run_args);
  }
  if (*plot) return cmd_plotdata(log_path, plot_out);
  return 2;
}
