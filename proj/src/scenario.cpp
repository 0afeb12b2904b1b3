#include "asns/scenario.hpp"

#include <fstream>
#include <sstream>

#include "asns/dynamics.hpp"
#include "asns/errors.hpp"
#include "text_util.hpp"

namespace asns {

const char* to_string(Defense d) {
  switch (d) {
    case Defense::Asns: return "asns";
    case Defense::Wmsr: return "wmsr";
    case Defense::None: return "none";
    case Defense::ConnectivityBaseline: return "connectivity-baseline";
  }
  return "unknown";
}

const char* to_string(DetectionMode m) {
  return m == DetectionMode::TwoHop ? "two-hop" : "oracle";
}

Defense parse_defense(std::string_view name) {
  for (Defense d : {Defense::Asns, Defense::Wmsr, Defense::None,
                    Defense::ConnectivityBaseline})
    if (name == to_string(d)) return d;
  throw ConfigurationError("unknown defense '" + std::string(name) + "'");
}

namespace {

using text::fmt_double;
using text::parse_double;
using text::parse_long;

Coefficient parse_coefficient(const std::string& tok, int line) {
  Coefficient c;
  auto star = tok.find('*');
  if (star == std::string::npos) {
    c.scale = parse_double(tok, line);
    return c;
  }
  c.scale = parse_double(tok.substr(0, star), line);
  const std::string mod = tok.substr(star + 1);
  if (mod == "sin") c.mod = Modulation::Sin;
  else if (mod == "cos") c.mod = Modulation::Cos;
  else throw ParseError("unknown modulation '" + mod + "' (expected sin|cos)", line);
  return c;
}

std::string format_coefficient(const Coefficient& c) {
  std::string s = fmt_double(c.scale);
  if (c.mod == Modulation::Sin) s += "*sin";
  if (c.mod == Modulation::Cos) s += "*cos";
  return s;
}

bool is_keyword(const std::string& tok) {
  return tok == "delay" || tok == "gains" || tok == "offset";
}

AttackFunction parse_function(const std::vector<std::string>& tok,
                              std::size_t at, int line) {
  if (at >= tok.size()) throw ParseError("attack lacks a function", line);
  const std::string& name = tok[at];
  if (name == "constant") {
    ConstantBias b;
    for (std::size_t i = at + 1; i < tok.size(); ++i)
      b.value.push_back(parse_double(tok[i], line));
    if (b.value.empty()) throw ParseError("constant needs a vector", line);
    return b;
  }
  if (name == "replay") {
    if (tok.size() != at + 2) throw ParseError("replay takes one delay", line);
    return Replay{static_cast<int>(parse_long(tok[at + 1], line))};
  }
  if (name == "affine") {
    Affine a;
    std::size_t i = at + 1;
    while (i < tok.size()) {
      const std::string key = tok[i++];
      if (key == "delay") {
        if (i >= tok.size()) throw ParseError("delay needs a value", line);
        a.delay = static_cast<int>(parse_long(tok[i++], line));
      } else if (key == "gains" || key == "offset") {
        auto& dst = key == "gains" ? a.gains : a.offset;
        while (i < tok.size() && !is_keyword(tok[i]))
          dst.push_back(parse_coefficient(tok[i++], line));
        if (dst.empty()) throw ParseError(key + " needs values", line);
      } else {
        throw ParseError("unexpected '" + key + "' in affine attack", line);
      }
    }
    return a;
  }
  throw ParseError("unknown attack function '" + name + "'", line);
}

std::string format_function(const AttackFunction& fn) {
  std::ostringstream os;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantBias>) {
          os << "constant";
          for (double v : f.value) os << ' ' << fmt_double(v);
        } else if constexpr (std::is_same_v<T, Replay>) {
          os << "replay " << f.delay;
        } else {
          os << "affine delay " << f.delay;
          if (!f.gains.empty()) {
            os << " gains";
            for (const auto& c : f.gains) os << ' ' << format_coefficient(c);
          }
          if (!f.offset.empty()) {
            os << " offset";
            for (const auto& c : f.offset) os << ' ' << format_coefficient(c);
          }
        }
      },
      fn);
  return os.str();
}

void add_rule(AttackScripts& scripts, NodeId attacker, AttackRule rule) {
  for (auto& s : scripts)
    if (s.attacker == attacker) {
      s.rules.push_back(std::move(rule));
      return;
    }
  scripts.push_back({attacker, {std::move(rule)}});
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  bool have_candidates = false;
  bool have_initial = false;

  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      lines.emplace_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line = static_cast<int>(idx) + 1;
    auto tok = text::split_ws(text::strip_comment(lines[idx]));
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n)
        throw ParseError("'" + key + "' expects " + std::to_string(n - 1) + " value(s)", line);
    };

    if (key == "name") {
      if (tok.size() < 2) throw ParseError("name needs a value", line);
      s.name = tok[1];
      for (std::size_t i = 2; i < tok.size(); ++i) s.name += " " + tok[i];
    } else if (key == "agents") {
      need(2);
      s.agents = static_cast<int>(parse_long(tok[1], line));
    } else if (key == "dimension") {
      need(2);
      s.dimension = static_cast<int>(parse_long(tok[1], line));
    } else if (key == "epsilon") {
      need(2);
      s.epsilon = parse_double(tok[1], line);
    } else if (key == "faults") {
      need(2);
      s.F = static_cast<int>(parse_long(tok[1], line));
    } else if (key == "defense") {
      need(2);
      try {
        s.defense = parse_defense(tok[1]);
      } catch (const ConfigurationError& e) {
        throw ParseError(e.what(), line);
      }
    } else if (key == "policy") {
      if (tok.size() == 2 && tok[1] == "minimum") s.policy = SelectionPolicy::minimum();
      else if (tok.size() == 3 && tok[1] == "flexible")
        s.policy = SelectionPolicy::flexible(static_cast<int>(parse_long(tok[2], line)));
      else throw ParseError("policy expects 'minimum' or 'flexible D'", line);
    } else if (key == "detection") {
      need(2);
      if (tok[1] == "two-hop") s.detection = DetectionMode::TwoHop;
      else if (tok[1] == "oracle") s.detection = DetectionMode::Oracle;
      else throw ParseError("detection expects two-hop|oracle", line);
    } else if (key == "horizon") {
      need(2);
      s.horizon = parse_long(tok[1], line);
    } else if (key == "tolerance") {
      need(2);
      s.tolerance = parse_double(tok[1], line);
    } else if (key == "seed") {
      need(2);
      s.seed = static_cast<std::uint64_t>(parse_long(tok[1], line));
    } else if (key == "leader") {
      need(3);
      s.leader_pins[static_cast<int>(parse_long(tok[1], line))] =
          static_cast<NodeId>(parse_long(tok[2], line));
    } else if (key == "admissible") {
      for (std::size_t i = 1; i < tok.size(); ++i)
        s.admissible.insert(static_cast<NodeId>(parse_long(tok[i], line)));
    } else if (key == "graph") {
      need(2);
      if (tok[1] != "initial" && tok[1] != "candidates")
        throw ParseError("graph expects 'initial' or 'candidates'", line);
      std::string body;
      std::size_t end = idx + 1;
      for (; end < lines.size(); ++end) {
        auto t = text::split_ws(text::strip_comment(lines[end]));
        if (t.size() == 1 && t[0] == "end") break;
        body += lines[end];
        body += '\n';
      }
      if (end == lines.size()) throw ParseError("graph block lacks 'end'", line);
      DirectedGraph g = parse_graph_literal(body, line + 1);
      if (tok[1] == "initial") {
        s.initial = std::move(g);
        have_initial = true;
      } else {
        s.candidates = std::move(g);
        have_candidates = true;
      }
      idx = end;
    } else if (key == "state") {
      if (tok.size() < 3) throw ParseError("state needs an id and a vector", line);
      Vec x;
      for (std::size_t i = 2; i < tok.size(); ++i) x.push_back(parse_double(tok[i], line));
      s.initial_states[static_cast<NodeId>(parse_long(tok[1], line))] = std::move(x);
    } else if (key == "attack") {
      // attack A -> R|* window START END|inf FUNCTION ...
      if (tok.size() < 8 || tok[2] != "->" || tok[4] != "window")
        throw ParseError("attack expects 'A -> R window START END FUNCTION ...'", line);
      AttackRule rule;
      const auto attacker = static_cast<NodeId>(parse_long(tok[1], line));
      if (tok[3] != "*") rule.receiver = static_cast<NodeId>(parse_long(tok[3], line));
      rule.start = parse_long(tok[5], line);
      rule.end = tok[6] == "inf" ? kForever : parse_long(tok[6], line);
      rule.function = parse_function(tok, 7, line);
      add_rule(s.scripts, attacker, std::move(rule));
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }

  if (!have_initial) throw ParseError("scenario lacks a 'graph initial' block", 1);
  if (!have_candidates) {
    s.candidates = DirectedGraph(s.initial.nodes(), true);
    for (const Edge& e : s.initial.edges())
      if (!s.candidates.has_edge(e.from, e.to)) s.candidates.add_edge(e.from, e.to, e.weight);
  }
  return s;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  if (!s.name.empty()) os << "name " << s.name << "\n";
  os << "agents " << s.agents << "\n";
  os << "dimension " << s.dimension << "\n";
  os << "epsilon " << fmt_double(s.epsilon) << "\n";
  os << "faults " << s.F << "\n";
  os << "defense " << to_string(s.defense) << "\n";
  if (s.policy.kind == SelectionPolicy::Kind::Minimum) os << "policy minimum\n";
  else os << "policy flexible " << s.policy.degree << "\n";
  os << "detection " << to_string(s.detection) << "\n";
  os << "horizon " << s.horizon << "\n";
  os << "tolerance " << fmt_double(s.tolerance) << "\n";
  os << "seed " << s.seed << "\n";
  for (const auto& [epoch, id] : s.leader_pins) os << "leader " << epoch << " " << id << "\n";
  os << "admissible";
  for (NodeId id : s.admissible) os << " " << id;
  os << "\n";
  os << "graph initial\n" << format_graph_literal(s.initial) << "end\n";
  os << "graph candidates\n" << format_graph_literal(s.candidates) << "end\n";
  for (const auto& [id, x] : s.initial_states) {
    os << "state " << id;
    for (double v : x) os << " " << fmt_double(v);
    os << "\n";
  }
  for (const auto& script : s.scripts)
    for (const auto& rule : script.rules) {
      os << "attack " << script.attacker << " -> ";
      if (rule.receiver) os << *rule.receiver;
      else os << "*";
      os << " window " << rule.start << " ";
      if (rule.end == kForever) os << "inf";
      else os << rule.end;
      os << " " << format_function(rule.function) << "\n";
    }
  return os.str();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario s = parse_scenario(buf.str());
  if (s.name.empty()) s.name = path.stem().string();
  return s;
}

void validate_scenario(const Scenario& s) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (s.agents < 1) fail("a scenario needs at least one agent");
  if (s.dimension < 1) fail("state dimension must be >= 1");
  if (s.F < 0) fail("F must be nonnegative");
  if (s.horizon < 1) fail("horizon must be >= 1");
  if (!(s.tolerance > 0.0)) fail("convergence tolerance must be positive");
  if (s.initial.node_count() != static_cast<std::size_t>(s.agents) ||
      s.candidates.node_count() != static_cast<std::size_t>(s.agents))
    fail("graph node counts must equal the agent count");
  if (!s.candidates.undirected()) fail("the candidate graph must be undirected");
  if (!is_edge_subgraph(s.initial, s.candidates))
    fail("the initial graph must be a subgraph of the candidate graph");

  for (NodeId id : s.initial.nodes()) {
    auto it = s.initial_states.find(id);
    if (it == s.initial_states.end())
      fail("agent " + std::to_string(id) + " has no initial state");
    if (it->second.size() != static_cast<std::size_t>(s.dimension))
      fail("agent " + std::to_string(id) + " state has dimension " +
           std::to_string(it->second.size()) + ", expected " +
           std::to_string(s.dimension));
  }
  if (s.initial_states.size() != static_cast<std::size_t>(s.agents))
    fail("initial states reference unknown agents");

  for (NodeId id : s.admissible)
    if (!s.initial.contains(id)) fail("admissible agent " + std::to_string(id) + " does not exist");
  validate_scripts(s.scripts, s.admissible);
  for (const auto& script : s.scripts)
    for (const auto& rule : script.rules) {
      if (rule.receiver && !s.initial.contains(*rule.receiver))
        fail("attack targets unknown agent " + std::to_string(*rule.receiver));
      const auto n = static_cast<std::size_t>(s.dimension);
      if (const auto* b = std::get_if<ConstantBias>(&rule.function); b && b->value.size() != n)
        fail("constant attack vector has the wrong dimension");
      if (const auto* a = std::get_if<Affine>(&rule.function)) {
        for (const auto* c : {&a->gains, &a->offset})
          if (c->size() > 1 && c->size() != n)
            fail("affine attack coefficients must have 1 or " + std::to_string(n) + " entries");
      }
    }

  if (!check_f_local(s.candidates, s.admissible, s.F))
    fail("admissible Byzantine set violates the F-local bound on the candidate graph");
  if (!check_f_local(s.initial, s.admissible, s.F))
    fail("admissible Byzantine set violates the F-local bound on the initial graph");

  const auto step = validate_step_size(s.initial, s.epsilon);
  if (!step.valid)
    fail("epsilon " + fmt_double(s.epsilon) +
         " violates 0 < epsilon < 1/max l_ii = " + fmt_double(step.bound));
  if (s.defense == Defense::Asns) {
    if (s.policy.per_agent() < 1) fail("flexible policy degree must be >= 1");
    if (!(s.epsilon * s.policy.per_agent() < 1.0))
      fail("epsilon " + fmt_double(s.epsilon) + " violates the bound 1/" +
           std::to_string(s.policy.per_agent()) + " of the selected graphs");
  }
  for (const auto& [epoch, id] : s.leader_pins) {
    if (epoch < 1) fail("leader pins are indexed from epoch 1");
    if (!s.initial.contains(id)) fail("pinned leader " + std::to_string(id) + " does not exist");
  }
}

}  // namespace asns
