// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asns/detection.hpp"
#include "asns/errors.hpp"
#include "asns/msr.hpp"
#include "asns/selection.hpp"
#include "asns/simulation.hpp"
#include "asns/spectral.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace asns;

namespace tol {
constexpr double kHullWidth = 1e-6;
constexpr long kSuiteHorizon = 5000;
constexpr int kSuiteRuns = 200;
constexpr double kSuiteBudgetSeconds = 60.0;
constexpr double kHullSlack = 1e-12;
constexpr int kSelectionCases = 500;
constexpr int kEigenCases = 500;
constexpr double kLambda = 1e-7;
constexpr double kVector = 1e-6;
constexpr double kMinEntry = 1e-12;
constexpr double kResidual = 1e-8;
constexpr int kTruthfulRuns = 1000;
constexpr int kAttackRuns = 300;
constexpr long kFlagLatency = 1;
constexpr double kSubRunSeconds = 5.0;
constexpr int kWmsrTrials = 50;
}  // namespace tol

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scenario bundled(const std::string& name) {
  return load_scenario(std::string(ASNS_SCENARIO_DIR) + "/" + name + ".scenario");
}

NodeSet complement(const std::vector<NodeId>& all, const NodeSet& removed) {
  NodeSet out;
  for (NodeId i : all)
    if (!removed.count(i)) out.insert(i);
  return out;
}

// Shared by criteria 1, 2 and 5.
struct AttackSuite {
  std::vector<Scenario> scenarios;
  std::vector<SimTrace> traces;
  double seconds = 0.0;
  std::string error;
};

const AttackSuite& attack_suite() {
  static const AttackSuite suite = [] {
    AttackSuite s;
    gen::Rng rng(20240601);
    for (int i = 0; i < tol::kSuiteRuns; ++i) {
      auto sc = gen::random_attacked_scenario(rng, i);
      sc.horizon = tol::kSuiteHorizon;
      sc.tolerance = tol::kHullWidth;
      s.scenarios.push_back(std::move(sc));
    }
    const auto t0 = Clock::now();
    for (const auto& sc : s.scenarios) {
      try {
        s.traces.push_back(run_scenario(sc));
      } catch (const std::exception& e) {
        s.error = sc.name + ": " + e.what();
        break;
      }
    }
    s.seconds = seconds_since(t0);
    return s;
  }();
  return suite;
}

Verdict attacked_convergence() {
  const auto& s = attack_suite();
  if (!s.error.empty()) return {false, "run error " + s.error};
  int converged = 0, attacked = 0, instants_max = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < s.traces.size(); ++i) {
    const auto& t = s.traces[i];
    const auto sched = build_schedule(s.scenarios[i].admissible, s.scenarios[i].scripts);
    instants_max = std::max<int>(instants_max, static_cast<int>(sched.activations.size()));
    if (!s.scenarios[i].scripts.empty()) ++attacked;
    if (t.summary.converged && t.summary.final_hull_width < tol::kHullWidth &&
        t.summary.last_step < tol::kSuiteHorizon)
      ++converged;
    else if (first_bad.empty())
      first_bad = t.scenario + " " + to_string(t.summary.outcome);
  }
  std::ostringstream os;
  os << converged << "/" << s.traces.size() << " converged (" << attacked
     << " attacked, up to " << instants_max << " activation instants) in " << s.seconds << " s";
  if (!first_bad.empty()) os << "; first failure " << first_bad;
  const bool pass = converged == tol::kSuiteRuns && s.seconds < tol::kSuiteBudgetSeconds;
  return {pass, os.str()};
}

Verdict hull_monotonicity() {
  const auto& s = attack_suite();
  if (!s.error.empty()) return {false, "run error " + s.error};
  long checked = 0, violations = 0;
  for (const auto& t : s.traces)
    for (std::size_t r = 1; r < t.rows.size(); ++r) {
      const auto& a = t.rows[r - 1];
      const auto& b = t.rows[r];
      if (b.epoch < 1 || a.epoch != b.epoch) continue;
      ++checked;
      for (std::size_t l = 0; l < a.hull.lo.size(); ++l)
        if (b.hull.lo[l] < a.hull.lo[l] - tol::kHullSlack ||
            b.hull.hi[l] > a.hull.hi[l] + tol::kHullSlack)
          ++violations;
    }
  std::ostringstream os;
  os << violations << " violations over " << checked << " post-isolation step pairs";
  return {violations == 0 && checked > 0, os.str()};
}

Verdict selection_guarantees(bool report_psi) {
  gen::Rng rng(777);
  int connected = 0, nonempty = 0, structure_errors = 0;
  for (int c = 0; c < tol::kSelectionCases; ++c) {
    const int F = static_cast<int>(gen::integer(rng, 1, 2));
    const int n = static_cast<int>(gen::integer(rng, 2 * F + 2, 10));
    const auto pre0 = gen::random_robust(rng, n, F + 1);
    const auto removed = gen::random_f_local_set(rng, pre0, F, n);
    const auto normal = complement(pre0.nodes(), removed);
    const auto pre = build_pre_graph({0, pre0}, normal, 1);
    if (oracle::connected_undirected(induced_subgraph(pre.graph, normal))) ++connected;
    try {
      const auto ctx = prepare_selection({0, pre0}, normal, std::nullopt,
                                         SelectionPolicy::minimum(), 1);
      bool all = true;
      for (NodeId i : normal)
        if (i != ctx.leader && ctx.psi.at(i).empty()) all = false;
      if (all) ++nonempty;
    } catch (const StructureError&) {
      ++structure_errors;
    }
  }
  std::ostringstream os;
  if (report_psi) {
    os << nonempty << "/" << tol::kSelectionCases << " cases with nonempty psi, "
       << structure_errors << " structure errors";
    return {nonempty == tol::kSelectionCases && structure_errors == 0, os.str()};
  }
  os << connected << "/" << tol::kSelectionCases << " rebuilt candidate graphs connected";
  return {connected == tol::kSelectionCases, os.str()};
}

Verdict minimum_communication() {
  const auto& s = attack_suite();
  if (!s.error.empty()) return {false, "run error " + s.error};
  int epochs = 0, good = 0;
  for (const auto& t : s.traces)
    for (const auto& e : t.epochs) {
      if (e.epoch < 1) continue;
      ++epochs;
      if (e.normal_edge_count == e.normal.size() - 1 && e.normal_root.has_value() &&
          e.normal_edge_count == e.edges.size())
        ++good;
    }
  std::ostringstream os;
  os << good << "/" << epochs << " epochs with |A|-1 edges and a rooted spanning tree";
  return {good == epochs && epochs > 0, os.str()};
}

Verdict eigen_oracle() {
  gen::Rng rng(4242);
  int ok = 0;
  double worst_lambda = 0.0, worst_vec = 0.0, worst_residual = 0.0, min_entry = 1.0;
  for (int c = 0; c < tol::kEigenCases; ++c) {
    const int n = static_cast<int>(gen::integer(rng, 1, 10));
    const auto g = gen::random_connected(rng, n, gen::uniform(rng, 0.0, 0.7), gen::coin(rng, 0.3));
    const NodeId leader = static_cast<NodeId>(gen::integer(rng, 1, n));
    const auto e = smallest_eigenpair(perturbed_laplacian(g, leader));
    const auto [vals, vecs] = oracle::jacobi_eigen(oracle::dense_perturbed_laplacian(g, leader));
    Eigen::VectorXd ref = vecs.col(0);
    if (ref.sum() < 0) ref = -ref;
    ref /= ref.norm();
    const double dl = std::abs(e.lambda1 - vals(0));
    const double dv = (e.v1 - ref).cwiseAbs().maxCoeff();
    worst_lambda = std::max(worst_lambda, dl);
    worst_vec = std::max(worst_vec, dv);
    worst_residual = std::max(worst_residual, e.residual);
    min_entry = std::min(min_entry, e.v1.minCoeff());
    if (dl <= tol::kLambda && dv <= tol::kVector && e.v1.minCoeff() > tol::kMinEntry &&
        e.residual <= tol::kResidual)
      ++ok;
  }
  std::ostringstream os;
  os << ok << "/" << tol::kEigenCases << " match; max |dlambda| " << worst_lambda
     << ", max |dv| " << worst_vec << ", min v1 entry " << min_entry << ", max residual "
     << worst_residual;
  return {ok == tol::kEigenCases, os.str()};
}

Verdict robustness_spot_checks() {
  DirectedGraph p3(3, true);
  p3.add_edge(1, 2);
  p3.add_edge(2, 3);
  DirectedGraph k4(4, true);
  for (NodeId a = 1; a <= 4; ++a)
    for (NodeId b = a + 1; b <= 4; ++b) k4.add_edge(a, b);
  DirectedGraph split(4, true);
  split.add_edge(1, 2);
  split.add_edge(3, 4);
  const int a = max_robustness(p3), b = max_robustness(k4), c = max_robustness(split);
  const bool pass = a == 1 && b == 2 && c == 0 && oracle::max_robustness(p3) == 1 &&
                    oracle::max_robustness(k4) == 2 && oracle::max_robustness(split) == 0;
  std::ostringstream os;
  os << "P3 " << a << ", K4 " << b << ", disconnected " << c;
  return {pass, os.str()};
}

Verdict detection() {
  gen::Rng rng(99);
  long false_flags = 0;
  for (int i = 0; i < tol::kTruthfulRuns; ++i) {
    auto s = gen::random_attacked_scenario(rng, i);
    s.scripts.clear();
    s.detection = DetectionMode::TwoHop;
    s.horizon = static_cast<Step>(gen::integer(rng, 20, 150));
    false_flags += static_cast<long>(run_scenario(s, {false, false}).flags.size());
  }

  long lies = 0, late = 0, attackers = 0;
  auto audit = [&](const SimTrace& t) {
    std::map<NodeId, Step> first_flag, first_lie;
    for (const auto& f : t.flags) first_flag.emplace(f.flagged, f.k);
    for (const auto& l : t.lies)
      if (l.magnitude > 10 * kDefaultDetectionTolerance) first_lie.emplace(l.attacker, l.k);
    for (const auto& [a, k] : first_lie) {
      ++attackers;
      auto it = first_flag.find(a);
      if (it == first_flag.end() || it->second > k + tol::kFlagLatency) ++late;
    }
    lies += static_cast<long>(t.lies.size());
  };
  for (int i = 0; i < tol::kAttackRuns; ++i) {
    auto s = gen::random_attacked_scenario(rng, i);
    s.detection = DetectionMode::TwoHop;
    s.horizon = 500;
    audit(run_scenario(s, {false, false}));
  }
  audit(run_scenario(bundled("asns_two_epochs"), {false, false}));

  std::ostringstream os;
  os << false_flags << " false flags over " << tol::kTruthfulRuns << " truthful runs; " << late
     << " of " << attackers << " attackers flagged later than " << tol::kFlagLatency
     << " step after their first visible lie (" << lies << " lies logged)";
  return {false_flags == 0 && late == 0 && attackers > 0, os.str()};
}

Verdict substituted_topology() {
  std::ostringstream os;
  bool pass = true;

  auto s = bundled("asns_two_epochs");
  const bool pre_robust = max_robustness(s.candidates) == 3;
  auto t0 = Clock::now();
  s.horizon = 3000;
  const auto a = run_scenario(s);
  const double ta = seconds_since(t0);
  NodeSet normal;
  for (NodeId i : s.initial.nodes())
    if (!s.admissible.count(i)) normal.insert(i);
  // sigma_i <= sqrt(n) * |normal| * width once the hull is below tolerance.
  const double sigma_bound = std::sqrt(static_cast<double>(s.dimension)) *
                             static_cast<double>(normal.size()) * s.tolerance;
  double sigma_max = 0.0;
  for (std::size_t i = 0; i < a.agents.size(); ++i)
    if (normal.count(a.agents[i])) sigma_max = std::max(sigma_max, a.rows.back().sigma[i]);
  const bool pa = pre_robust && a.summary.converged && a.summary.reconstructions == 2 &&
                  sigma_max <= sigma_bound && ta < tol::kSubRunSeconds && s.epsilon == 0.02 &&
                  s.F == 2 && s.admissible == NodeSet{1, 4, 9};
  os << "(a) " << (pa ? "ok" : "FAIL") << ": " << a.summary.reconstructions
     << " reconstructions, converged at k=" << a.summary.convergence_step.value_or(-1)
     << ", max normal sigma " << sigma_max << " (bound " << sigma_bound << "), " << ta << " s";
  pass = pass && pa;

  t0 = Clock::now();
  const auto c = run_scenario(bundled("isolation_baseline"));
  const double tc = seconds_since(t0);
  bool disconnected = false;
  for (const auto& e : c.epochs)
    if (e.epoch >= 1 && !e.normal_root) disconnected = true;
  const bool pb = !c.summary.converged && disconnected && tc < tol::kSubRunSeconds;
  os << "; (b) " << (pb ? "ok" : "FAIL") << ": " << to_string(c.summary.outcome)
     << ", isolation leaves normal graph without spanning tree: " << (disconnected ? "yes" : "no")
     << ", width " << c.summary.final_hull_width << ", " << tc << " s";
  pass = pass && pb;

  const auto w_s = bundled("wmsr_sparse");
  t0 = Clock::now();
  const auto w = run_scenario(w_s);
  const double tw = seconds_since(t0);
  const int r = max_robustness(w_s.initial);
  const bool pc = !w.summary.converged && r == 1 && r < 2 * w_s.F + 1 && tw < tol::kSubRunSeconds;
  os << "; (c) " << (pc ? "ok" : "FAIL") << ": " << to_string(w.summary.outcome) << " on a "
     << r << "-robust graph, width " << w.summary.final_hull_width << ", " << tw << " s";
  pass = pass && pc;
  return {pass, os.str()};
}

Verdict wmsr_positive_control() {
  gen::Rng rng(1010);
  int converged = 0;
  double worst = 0.0;
  for (int trial = 0; trial < tol::kWmsrTrials; ++trial) {
    Scenario s;
    s.name = "k7_" + std::to_string(trial);
    s.agents = 7;
    s.dimension = static_cast<int>(gen::integer(rng, 1, 3));
    s.F = 1;
    s.defense = Defense::Wmsr;
    s.initial = DirectedGraph(7, true);
    for (NodeId a = 1; a <= 7; ++a)
      for (NodeId b = a + 1; b <= 7; ++b) s.initial.add_edge(a, b);
    s.candidates = s.initial;
    s.epsilon = gen::uniform(rng, 0.05, 0.16);
    s.horizon = 5000;
    s.tolerance = tol::kHullWidth;
    s.admissible = {static_cast<NodeId>(gen::integer(rng, 1, 7))};
    for (NodeId i = 1; i <= 7; ++i) s.initial_states[i] = gen::random_vec(rng, s.dimension);
    s.scripts = gen::random_scripts(rng, s.initial, s.admissible, s.dimension, 1, 50);
    const auto t = run_scenario(s);
    worst = std::max(worst, t.summary.final_hull_width);
    if (t.summary.converged) ++converged;
  }
  std::ostringstream os;
  os << converged << "/" << tol::kWmsrTrials
     << " K7 runs (4-robust >= 2F+1 with F=1) converged; worst final width " << worst;
  return {converged == tol::kWmsrTrials, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 convergence under scripted attacks", attacked_convergence},
      {"2 hull monotonicity", hull_monotonicity},
      {"3 rebuilt candidate graph connected", [] { return selection_guarantees(false); }},
      {"4 nonempty selectable sets", [] { return selection_guarantees(true); }},
      {"5 minimum communication", minimum_communication},
      {"6 eigen-solver oracle", eigen_oracle},
      {"7 robustness spot checks", robustness_spot_checks},
      {"8 detection soundness/completeness", detection},
      {"9 bundled 10-node scenarios", substituted_topology},
      {"10 W-MSR positive control", wmsr_positive_control},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << v.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
