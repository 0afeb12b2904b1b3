// Command-line front end: run, sweep, robustness, gen-robust.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "asns/generate.hpp"
#include "asns/graph.hpp"
#include "asns/scenario.hpp"
#include "asns/simulation.hpp"
#include "asns/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw asns::PreconditionError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string describe(const asns::SimTrace& t) {
  const auto& s = t.summary;
  std::ostringstream os;
  os << t.scenario << ": " << asns::to_string(s.outcome);
  if (s.convergence_step) os << " at k=" << *s.convergence_step;
  os << ", epochs=" << t.epochs.size() << ", final width=" << s.final_hull_width
     << ", last k=" << s.last_step;
  if (s.failure_step)
    os << ", failure at k=" << *s.failure_step << " (" << s.failure_cause << "): "
       << s.failure_message;
  return os.str();
}

int cmd_run(const std::string& file, const std::string& out, const std::string& defense,
            long horizon) {
  auto s = asns::load_scenario(file);
  if (!defense.empty()) s.defense = asns::parse_defense(defense);
  if (horizon >= 0) s.horizon = horizon;
  const auto trace = asns::run_scenario(s);
  for (const auto& w : trace.summary.warnings) std::cerr << "warning: " << w << '\n';
  if (!out.empty()) asns::write_trace(trace, out);
  std::cout << describe(trace) << '\n';
  return asns::exit_code(trace.summary);
}

int cmd_sweep(const std::string& dir, const std::string& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".scenario") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const fs::path out_root = out.empty() ? fs::path(dir) / "traces" : fs::path(out);

  std::vector<std::string> lines(files.size());
  std::vector<int> codes(files.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const auto s = asns::load_scenario(files[i]);
        const auto trace = asns::run_scenario(s);
        asns::write_trace(trace, out_root / s.name);
        lines[i] = describe(trace);
        codes[i] = asns::exit_code(trace.summary);
      } catch (const std::exception& e) {
        lines[i] = files[i].stem().string() + ": error: " + e.what();
        codes[i] = 1;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                     static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::cout << lines[i] << '\n';
    if (codes[i] == 1) code = 1;
    else if (codes[i] == 2 && code == 0) code = 2;
  }
  return code;
}

int cmd_robustness(const std::string& file, int limit) {
  const auto g = asns::parse_graph_literal(read_file(file));
  std::cout << "max_robustness " << asns::max_robustness(g, limit) << '\n';
  const auto root = asns::has_rooted_spanning_tree(g);
  std::cout << "spanning_tree_root " << (root ? std::to_string(*root) : "none") << '\n';
  return 0;
}

int cmd_gen_robust(int n, int r, std::uint64_t seed, const std::string& out) {
  const auto g = asns::random_robust_graph(n, r, seed);
  std::string text = "# max_robustness " + std::to_string(asns::max_robustness(g)) + "\n" +
                     asns::format_graph_literal(g);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out, std::ios::binary) << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient consensus simulator with active secure neighbor selection"};
  app.require_subcommand(1);

  std::string scenario_file, out_dir, defense;
  long horizon = -1;
  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", scenario_file, "Scenario file")->required();
  run->add_option("--out", out_dir, "Directory for trace.csv, flags.csv, lies.csv, summary.json");
  run->add_option("--defense", defense, "Override: asns, wmsr, none, connectivity-baseline");
  run->add_option("--horizon", horizon, "Override the horizon K");

  std::string sweep_dir, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run every *.scenario file in a directory");
  sweep->add_option("dir", sweep_dir, "Directory of scenario files")->required();
  sweep->add_option("--out", sweep_out, "Trace root (default DIR/traces)");

  std::string graph_file;
  int limit = asns::kDefaultRobustnessLimit;
  auto* rob = app.add_subcommand("robustness", "Certify max r-robustness of a graph literal");
  rob->add_option("graph", graph_file, "Graph literal file")->required();
  rob->add_option("--limit", limit, "Refuse graphs with more nodes than this");

  int n = 0, r = 0;
  std::uint64_t seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-robust", "Emit a random r-robust undirected graph");
  gen->add_option("--n", n, "Node count")->required();
  gen->add_option("--r", r, "Required robustness")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(scenario_file, out_dir, defense, horizon);
    if (*sweep) return cmd_sweep(sweep_dir, sweep_out);
    if (*rob) return cmd_robustness(graph_file, limit);
    if (*gen) return cmd_gen_robust(n, r, seed, gen_out);
  } catch (const asns::Error& e) {
    std::cerr << "error (" << asns::to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
