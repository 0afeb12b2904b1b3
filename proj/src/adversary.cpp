#include "asns/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asns/errors.hpp"

namespace asns {

double Coefficient::at(Step k) const {
  switch (mod) {
    case Modulation::None: return scale;
    case Modulation::Sin: return scale * std::sin(static_cast<double>(k));
    case Modulation::Cos: return scale * std::cos(static_cast<double>(k));
  }
  return scale;
}

StateHistory::StateHistory(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
}

void StateHistory::push(std::vector<Vec> states) {
  if (states.size() != ids_.size())
    throw PreconditionError("history row has the wrong agent count");
  steps_.push_back(std::move(states));
}

const Vec& StateHistory::at(NodeId id, Step k) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw IdentifierError("no history for agent " + std::to_string(id));
  if (k < 0 || k > latest())
    throw PreconditionError("history has no entry for step " + std::to_string(k));
  return steps_[static_cast<std::size_t>(k)][it->second];
}

namespace {

const AttackRule* match_rule(const AttackScripts& scripts, NodeId attacker,
                             NodeId receiver, Step k) {
  const AttackRule* wildcard = nullptr;
  for (const auto& script : scripts) {
    if (script.attacker != attacker) continue;
    for (const auto& rule : script.rules) {
      if (!rule.active_at(k)) continue;
      if (!rule.receiver) {
        if (!wildcard) wildcard = &rule;
      } else if (*rule.receiver == receiver) {
        return &rule;
      }
    }
  }
  return wildcard;
}

double entry(const std::vector<Coefficient>& coeffs, std::size_t l, Step k,
             double missing) {
  if (coeffs.empty()) return missing;
  if (coeffs.size() == 1) return coeffs[0].at(k);
  return coeffs.at(l).at(k);
}

Transmission evaluate(const AttackRule& rule, NodeId attacker, Step k,
                      const StateHistory& history) {
  Transmission out;
  out.rule = &rule;
  auto delayed = [&](int delay) -> const Vec& {
    Step at = k - delay;
    if (at < 0) {
      out.clamped = true;
      at = 0;
    }
    return history.at(attacker, at);
  };
  std::visit(
      [&](const auto& fn) {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, ConstantBias>) {
          out.value = fn.value;
        } else if constexpr (std::is_same_v<T, Replay>) {
          out.value = delayed(fn.delay);
        } else {
          const Vec& x = delayed(fn.delay);
          for (const auto* c : {&fn.gains, &fn.offset})
            if (c->size() > 1 && c->size() != x.size())
              throw PreconditionError("affine attack coefficients do not match state dimension");
          out.value.resize(x.size());
          for (std::size_t l = 0; l < x.size(); ++l)
            out.value[l] = entry(fn.gains, l, k, 1.0) * x[l] + entry(fn.offset, l, k, 0.0);
        }
      },
      rule.function);
  return out;
}

}  // namespace

Transmission transmit(const AttackScripts& scripts, NodeId attacker,
                      NodeId receiver, Step k, const StateHistory& history) {
  if (const AttackRule* rule = match_rule(scripts, attacker, receiver, k))
    return evaluate(*rule, attacker, k, history);
  Transmission out;
  out.value = history.at(attacker, k);
  return out;
}

bool lies_at(const AttackScripts& scripts, NodeId attacker, Step k,
             const StateHistory& history) {
  const Vec& truth = history.at(attacker, k);
  for (const auto& script : scripts) {
    if (script.attacker != attacker) continue;
    for (const auto& rule : script.rules)
      if (rule.active_at(k) && evaluate(rule, attacker, k, history).value != truth)
        return true;
  }
  return false;
}

bool check_f_local(const DirectedGraph& g, const NodeSet& active, int F) {
  for (NodeId i : g.nodes()) {
    int count = 0;
    for (const auto& [j, w] : g.in_edges(i))
      if (active.count(j)) ++count;
    if (count > F) return false;
  }
  return true;
}

void validate_scripts(const AttackScripts& scripts, const NodeSet& admissible) {
  struct Window {
    Step start, end;
  };
  std::map<std::pair<NodeId, std::optional<NodeId>>, std::vector<Window>> windows;
  for (const auto& script : scripts) {
    const std::string who = "attacker " + std::to_string(script.attacker);
    if (!admissible.count(script.attacker))
      throw ValidationError(who + " is not in the admissible Byzantine set");
    for (const auto& rule : script.rules) {
      if (rule.start <= 0)
        throw ValidationError(who + ": attacks cannot start at k = 0");
      if (rule.end <= rule.start)
        throw ValidationError(who + ": empty attack window");
      if (const auto* r = std::get_if<Replay>(&rule.function); r && r->delay < 1)
        throw ValidationError(who + ": replay delay must be >= 1");
      if (const auto* a = std::get_if<Affine>(&rule.function); a && a->delay < 0)
        throw ValidationError(who + ": affine delay must be >= 0");
      auto& list = windows[{script.attacker, rule.receiver}];
      for (const auto& w : list)
        if (rule.start < w.end && w.start < rule.end)
          throw ValidationError(who + ": overlapping windows for the same receiver");
      list.push_back({rule.start, rule.end});
    }
  }
}

AttackSchedule build_schedule(const NodeSet& admissible,
                              const AttackScripts& scripts) {
  validate_scripts(scripts, admissible);
  AttackSchedule schedule;
  schedule.admissible = admissible;
  std::map<NodeId, Step> first;
  for (const auto& script : scripts)
    for (const auto& rule : script.rules) {
      auto [it, inserted] = first.emplace(script.attacker, rule.start);
      if (!inserted) it->second = std::min(it->second, rule.start);
    }
  for (const auto& [attacker, k] : first) schedule.activations[k].insert(attacker);
  return schedule;
}

}  // namespace asns
