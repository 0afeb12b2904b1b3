#include "asns/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace asns {

using text::fmt_double;

std::string trace_csv(const SimTrace& t) {
  std::ostringstream os;
  os << "k,agent,epoch,role,flagged";
  for (int l = 1; l <= t.dimension; ++l) os << ",x_" << l;
  os << ",sigma";
  for (int l = 1; l <= t.dimension; ++l) os << ",hull_lo_" << l;
  for (int l = 1; l <= t.dimension; ++l) os << ",hull_hi_" << l;
  os << '\n';
  for (const auto& row : t.rows) {
    std::string hull;
    for (double v : row.hull.lo) hull += ',' + fmt_double(v);
    for (double v : row.hull.hi) hull += ',' + fmt_double(v);
    for (std::size_t a = 0; a < row.x.size(); ++a) {
      os << row.k << ',' << t.agents[a] << ',' << row.epoch << ',' << to_string(row.roles[a])
         << ',' << (row.flagged[a] ? 1 : 0);
      for (double v : row.x[a]) os << ',' << fmt_double(v);
      os << ',' << fmt_double(row.sigma[a]) << hull << '\n';
    }
  }
  return os.str();
}

std::string flags_csv(const SimTrace& t) {
  std::ostringstream os;
  os << "k,observer,flagged,residual\n";
  for (const auto& f : t.flags)
    os << f.k << ',' << f.observer << ',' << f.flagged << ',' << fmt_double(f.residual) << '\n';
  return os.str();
}

std::string lies_csv(const SimTrace& t) {
  std::ostringstream os;
  os << "k,attacker,receiver,magnitude\n";
  for (const auto& l : t.lies)
    os << l.k << ',' << l.attacker << ',' << l.receiver << ',' << fmt_double(l.magnitude) << '\n';
  return os.str();
}

namespace {

nlohmann::ordered_json epoch_json(const EpochRecord& r) {
  nlohmann::ordered_json j;
  j["epoch"] = r.epoch;
  j["k"] = r.k;
  j["normal"] = std::vector<NodeId>(r.normal.begin(), r.normal.end());
  j["leader"] = r.leader ? nlohmann::ordered_json(*r.leader) : nlohmann::ordered_json();
  if (r.leader) {
    j["lambda1"] = r.lambda1;
    auto& v1 = j["v1"] = nlohmann::ordered_json::object();
    for (const auto& [id, v] : r.v1) v1[std::to_string(id)] = v;
    auto& psi = j["psi"] = nlohmann::ordered_json::object();
    for (const auto& [id, c] : r.psi) psi[std::to_string(id)] = c;
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : r.edges) edges.push_back({e.from, e.to, e.weight});
  j["normal_edge_count"] = r.normal_edge_count;
  j["normal_root"] = r.normal_root ? nlohmann::ordered_json(*r.normal_root) : nlohmann::ordered_json();
  return j;
}

}  // namespace

std::string summary_json(const SimTrace& t) {
  const auto& s = t.summary;
  nlohmann::ordered_json j;
  j["scenario"] = t.scenario;
  j["outcome"] = to_string(s.outcome);
  j["converged"] = s.converged;
  j["convergence_step"] = s.convergence_step ? nlohmann::ordered_json(*s.convergence_step)
                                             : nlohmann::ordered_json();
  j["final_hull_width"] = s.final_hull_width;
  j["last_step"] = s.last_step;
  j["reconstructions"] = s.reconstructions;
  j["edges_per_epoch"] = s.edges_per_epoch;
  if (s.failure_step) {
    j["failure"] = {{"step", *s.failure_step},
                    {"cause", s.failure_cause},
                    {"message", s.failure_message}};
  }
  j["warnings"] = s.warnings;
  auto& epochs = j["epochs"] = nlohmann::ordered_json::array();
  for (const auto& r : t.epochs) epochs.push_back(epoch_json(r));
  return j.dump(2) + '\n';
}

void write_trace(const SimTrace& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + (dir / name).string());
    out << body;
  };
  put("trace.csv", trace_csv(t));
  put("flags.csv", flags_csv(t));
  put("lies.csv", lies_csv(t));
  put("summary.json", summary_json(t));
}

int exit_code(const SimSummary& s) { return s.outcome == Outcome::Converged ? 0 : 2; }

}  // namespace asns
