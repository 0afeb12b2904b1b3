#include "asns/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "asns/adversary.hpp"
#include "asns/detection.hpp"
#include "asns/msr.hpp"

namespace asns {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::NotConverged: return "not-converged";
    case Outcome::DefenseFailure: return "defense-failure";
  }
  return "unknown";
}

std::map<NodeId, double> relative_error(const AgentStates& states,
                                        const RelativeErrorReference& ref) {
  std::map<NodeId, double> out;
  for (const auto& s : states) {
    std::vector<NodeId> refs;
    if (ref.normal.count(s.id)) refs.assign(ref.normal.begin(), ref.normal.end());
    else if (ref.initial.contains(s.id)) refs = ref.initial.in_neighbors(s.id);
    Vec sum(s.x.size(), 0.0);
    for (NodeId j : refs) {
      const Vec& xj = state_of(states, j).x;
      for (std::size_t l = 0; l < sum.size(); ++l) sum[l] += s.x[l] - xj[l];
    }
    double sq = 0.0;
    for (double v : sum) sq += v * v;
    out[s.id] = std::sqrt(sq);
  }
  return out;
}

namespace {

bool uses_detection(Defense d) {
  return d == Defense::Asns || d == Defense::ConnectivityBaseline;
}

double deviation(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) d = std::max(d, std::abs(a[l] - b[l]));
  return d;
}

EpochRecord make_epoch(int epoch, Step k, const NodeSet& normal,
                       const DirectedGraph& graph) {
  EpochRecord rec;
  rec.epoch = epoch;
  rec.k = k;
  rec.normal = normal;
  rec.edges = graph.edges();
  for (const Edge& e : rec.edges)
    if (normal.count(e.from) && normal.count(e.to)) ++rec.normal_edge_count;
  if (!normal.empty()) rec.normal_root = has_rooted_spanning_tree(induced_subgraph(graph, normal));
  return rec;
}

std::vector<Vec> snapshot(const AgentStates& states) {
  std::vector<Vec> xs;
  xs.reserve(states.size());
  for (const auto& s : states) xs.push_back(s.x);
  return xs;
}

bool rule_active(const AttackScripts& scripts, NodeId id, Step k) {
  for (const auto& script : scripts)
    if (script.attacker == id)
      for (const auto& rule : script.rules)
        if (rule.active_at(k)) return true;
  return false;
}

}  // namespace

SimTrace run_scenario(const Scenario& s, const RunOptions& opts) {
  validate_scenario(s);

  SimTrace trace;
  trace.scenario = s.name;
  trace.agents = s.initial.nodes();
  trace.dimension = s.dimension;
  const auto& ids = trace.agents;

  NodeSet all(ids.begin(), ids.end());
  NodeSet normal_agents;
  std::set_difference(all.begin(), all.end(), s.admissible.begin(), s.admissible.end(),
                      std::inserter(normal_agents, normal_agents.end()));
  const RelativeErrorReference ref{normal_agents, s.initial};

  AgentStates states;
  for (NodeId id : ids) {
    const Vec& x0 = s.initial_states.at(id);
    states.push_back({id, x0, x0, s.admissible.count(id) ? Role::ByzantineDormant : Role::Normal});
  }
  StateHistory history(ids);
  history.push(snapshot(states));

  Step last_attack_start = 0;
  for (const auto& script : s.scripts)
    for (const auto& rule : script.rules) last_attack_start = std::max(last_attack_start, rule.start);

  const PreDiscriminativeGraph pre0{0, s.candidates};
  DetectionState det = DetectionState::initial(ids);
  DirectedGraph graph = s.initial;
  Received prev_received;
  int epoch = 0;
  trace.epochs.push_back(make_epoch(0, 0, det.normal, graph));

  int streak = 0;
  Step streak_start = 0;
  std::set<NodeId> clamp_warned;

  for (Step k = 0; k <= s.horizon; ++k) {
    try {
      for (auto& st : states)
        if (s.admissible.count(st.id))
          st.role = rule_active(s.scripts, st.id, k) ? Role::ByzantineActive
                                                     : Role::ByzantineDormant;

      // Values sent at k over the graph in force, G(k-1) for k >= 1.
      Received sent;
      auto send = [&](NodeId from, NodeId to) -> const Vec& {
        if (auto it = sent.find({to, from}); it != sent.end()) return it->second;
        auto t = transmit(s.scripts, from, to, k, history);
        if (t.clamped && clamp_warned.insert(from).second)
          trace.summary.warnings.push_back(
              "agent " + std::to_string(from) + " at step " + std::to_string(k) +
              ": delayed attack read before k = 0, clamped to x(0)");
        if (t.rule) {
          const double dev = deviation(t.value, state_of(states, from).x);
          if (dev > 0.0) trace.lies.push_back({k, from, to, dev});
        }
        return sent.emplace(std::make_pair(to, from), std::move(t.value)).first->second;
      };
      if (k >= 1)
        for (const Edge& e : graph.edges()) send(e.from, e.to);

      if (k >= 1 && uses_detection(s.defense)) {
        std::map<NodeId, NodeSet> flagged_by;
        if (s.detection == DetectionMode::Oracle) {
          for (NodeId j : det.normal)
            if (lies_at(s.scripts, j, k, history)) {
              flagged_by[0].insert(j);
              trace.flags.push_back({k, 0, j, 0.0});
            }
        } else {
          for (NodeId i : det.normal)
            for (const auto& [j, w] : graph.in_edges(i)) {
              if (!det.normal.count(j)) continue;
              const Vec& prev_claim = prev_received.at({i, j});
              auto pkt = build_packet(j, k, sent.at({i, j}), graph, prev_received);
              auto res = detect_neighbor(i, pkt, prev_claim, graph, s.epsilon);
              if (res.flagged) {
                flagged_by[i].insert(j);
                trace.flags.push_back({k, i, j, res.residual});
              }
            }
        }
        det = merge_broadcasts(det, flagged_by, k);

        if (det.trigger) {
          ++epoch;
          if (s.defense == Defense::Asns) {
            std::optional<NodeId> pin;
            if (auto it = s.leader_pins.find(epoch); it != s.leader_pins.end()) pin = it->second;
            const auto ctx = prepare_selection(pre0, det.normal, pin, s.policy, epoch);
            graph = select_in_neighbors(ctx.psi, s.policy, ids);
            if (!validate_step_size(graph, s.epsilon))
              throw ValidationError("epsilon exceeds the step-size bound of the selected graph");
            EpochRecord rec = make_epoch(epoch, k, det.normal, graph);
            rec.leader = ctx.leader;
            rec.lambda1 = ctx.eig.lambda1;
            for (std::size_t i = 0; i < ctx.eig.order.size(); ++i)
              rec.v1[ctx.eig.order[i]] = ctx.eig.v1(static_cast<Eigen::Index>(i));
            rec.psi = ctx.psi;
            trace.epochs.push_back(std::move(rec));
          } else {
            for (const Edge& e : graph.edges())
              if (det.byzantine.count(e.from) || det.byzantine.count(e.to))
                graph.remove_edge(e.from, e.to);
            trace.epochs.push_back(make_epoch(epoch, k, det.normal, graph));
          }
        }
      }

      StepRow row;
      row.k = k;
      row.epoch = epoch;
      row.hull = hull_of(states, det.normal);
      row.normal_width = hull_of(states, normal_agents.empty() ? det.normal : normal_agents).width();
      if (opts.record_rows) {
        const auto sigma = relative_error(states, ref);
        for (const auto& st : states) {
          row.x.push_back(st.x);
          row.roles.push_back(st.role);
          row.flagged.push_back(det.byzantine.count(st.id) != 0);
          row.sigma.push_back(sigma.at(st.id));
        }
      }
      const double width = row.normal_width;
      trace.summary.final_hull_width = width;
      trace.summary.last_step = k;
      if (opts.record_rows || k == s.horizon) trace.rows.push_back(std::move(row));

      if (width < s.tolerance) {
        if (streak++ == 0) streak_start = k;
      } else {
        streak = 0;
      }
      if (opts.stop_on_convergence && streak >= kConvergenceWindow && k > last_attack_start)
        break;
      if (k == s.horizon) break;

      Received received;
      for (const Edge& e : graph.edges())
        received.emplace(std::make_pair(e.to, e.from), send(e.from, e.to));

      if (s.defense == Defense::Wmsr)
        states = wmsr_step(states, graph, received, MsrConfig{s.F, s.epsilon}, k);
      else
        states = consensus_step(states, graph, s.epsilon, received, k);
      history.push(snapshot(states));
      prev_received = std::move(received);
    } catch (const StructureError& e) {
      trace.summary.outcome = Outcome::DefenseFailure;
      trace.summary.failure_step = k;
      trace.summary.failure_cause = to_string(e.kind());
      trace.summary.failure_message = e.what();
      trace.summary.last_step = k;
      break;
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      throw RunError(e.kind(), k, e.what());
    }
  }

  auto& sum = trace.summary;
  sum.reconstructions = epoch;
  for (const auto& rec : trace.epochs) sum.edges_per_epoch.push_back(rec.edges.size());
  if (sum.outcome != Outcome::DefenseFailure) {
    sum.converged = streak >= kConvergenceWindow;
    if (sum.converged) sum.convergence_step = streak_start;
    sum.outcome = sum.converged ? Outcome::Converged : Outcome::NotConverged;
  }
  return trace;
}

}  // namespace asns
