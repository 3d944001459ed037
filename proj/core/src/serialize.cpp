#include "corrcache/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace corrcache {

namespace {

using Json = nlohmann::ordered_json;

Json indices(IndexSet s) { return Json(s.elements()); }

Json instance_json(const ProblemInstance& inst) {
  Json j;
  j["N"] = inst.n_files;
  j["K"] = inst.n_users;
  j["M"] = to_string(inst.memory);
  j["r"] = inst.overlap;
  j["t"] = to_string(inst.t);
  return j;
}

Json id_list(const std::vector<SubBlockId>& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.to_string());
  return out;
}

Json users_json(const DecodeReport& report) {
  Json users = Json::array();
  for (const UserDecode& u : report.per_user) {
    Json e;
    e["user"] = u.user;
    e["desired"] = u.desired.size();
    e["recovered"] = u.recovered.size();
    e["missing"] = id_list(u.missing);
    users.push_back(std::move(e));
  }
  return users;
}

IndexSet parse_indices(const Json& j) {
  IndexSet s;
  for (const auto& v : j) s.insert(v.get<int>());
  return s;
}

}  // namespace

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string transmission_json(const ProblemInstance& inst, const Transmission& tx) {
  Json root;
  root["instance"] = instance_json(inst);
  root["demand"] = tx.demand.demands;
  root["leaders"] = tx.leaders.leaders;
  root["load"] = to_string(measured_load(inst, tx));
  root["combinations"] = tx.combinations.size();
  Json groups = Json::array();
  const GroupTag* current = nullptr;
  for (const LinearCombination& c : tx.combinations) {
    if (current == nullptr || !(*current == c.origin)) {
      Json g;
      g["step"] = c.origin.step;
      g["J"] = indices(c.origin.users);
      g["B"] = indices(c.origin.residue);
      g["rows"] = Json::array();
      groups.push_back(std::move(g));
      current = &c.origin;
    }
    groups.back()["rows"].push_back(id_list(c.terms));
  }
  root["groups"] = std::move(groups);
  return root.dump(2) + "\n";
}

ParsedTransmission parse_transmission_json(std::string_view text) {
  const Json root = Json::parse(text);
  ParsedTransmission out;
  out.load = root.at("load").get<std::string>();
  for (const Json& g : root.at("groups")) {
    const GroupTag tag{g.at("step").get<int>(), parse_indices(g.at("J")), parse_indices(g.at("B"))};
    int row_index = 0;
    for (const Json& row : g.at("rows")) {
      LinearCombination c;
      c.origin = tag;
      c.row_index = ++row_index;
      for (const Json& term : row) c.terms.push_back(SubBlockId::parse(term.get<std::string>()));
      out.combinations.push_back(std::move(c));
    }
  }
  return out;
}

std::string verification_json(const ProblemInstance& inst, const DemandVector& d, const VerificationResult& result) {
  Json root;
  root["instance"] = instance_json(inst);
  root["demand"] = d.demands;
  root["leaders"] = result.leaders.leaders;
  root["load"] = to_string(result.load);
  root["decodable"] = result.decodable;
  root["matches_coefficient"] = result.matches_coefficient;
  root["users"] = users_json(result.report);
  return root.dump(2) + "\n";
}

std::string multirequest_json(const std::vector<std::pair<MultiRequestCase, VerificationResult>>& cases) {
  Json out = Json::array();
  for (const auto& [c, result] : cases) {
    Json e;
    e["case"] = to_string(c.id);
    e["N"] = c.n_files;
    e["K"] = c.n_users;
    e["t"] = 1;
    Json demands = Json::array();
    for (IndexSet s : c.demands) demands.push_back(indices(s));
    e["demands"] = std::move(demands);
    e["leaders"] = c.leader_order;
    e["load"] = to_string(result.load);
    e["expected_load"] = to_string(c.expected_load);
    e["reference_prior_load"] = to_string(c.reference_prior_load);
    e["decodable"] = result.decodable;
    e["matches_expected"] = result.matches_coefficient;
    e["users"] = users_json(result.report);
    out.push_back(std::move(e));
  }
  return out.dump(2) + "\n";
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "N,K,r,t,M,demands,must_pass,must_pass_failures,other_failures,worst_load,worst_expected,status\n";
  for (const SweepCell& c : report.cells) {
    os << c.n_files << ',' << c.n_users << ',' << c.overlap << ',' << c.t << ',' << to_string(c.memory) << ','
       << c.demands_checked << ',' << c.must_pass << ',' << c.must_pass_failures << ',' << c.other_failures << ','
       << to_string(c.worst_load) << ',' << to_string(c.worst_expected) << ',' << (c.passed() ? "pass" : "FAIL")
       << '\n';
  }
  return os.str();
}

std::string sweep_json(const SweepReport& report) {
  Json root;
  root["passed"] = report.passed();
  root["must_pass"] = report.total_must_pass;
  root["must_pass_failures"] = report.total_must_pass_failures;
  Json cells = Json::array();
  for (const SweepCell& c : report.cells) {
    Json e;
    e["N"] = c.n_files;
    e["K"] = c.n_users;
    e["r"] = c.overlap;
    e["t"] = c.t;
    e["M"] = to_string(c.memory);
    e["demands"] = c.demands_checked;
    e["must_pass"] = c.must_pass;
    e["must_pass_failures"] = c.must_pass_failures;
    e["other_failures"] = c.other_failures;
    e["worst_load"] = to_string(c.worst_load);
    e["worst_expected"] = to_string(c.worst_expected);
    e["passed"] = c.passed();
    Json failures = Json::array();
    for (const SweepFailure& f : c.failures) {
      Json fe;
      fe["demand"] = f.demand.demands;
      fe["must_pass"] = f.must_pass;
      fe["decodable"] = f.decodable;
      fe["load"] = to_string(f.load);
      failures.push_back(std::move(fe));
    }
    e["failures"] = std::move(failures);
    cells.push_back(std::move(e));
  }
  root["cells"] = std::move(cells);
  return root.dump(2) + "\n";
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream os;
  os << "M,load,t,s_or_avg,kind,M_float,load_float,status\n";
  for (const CurveRow& r : rows) {
    os << to_string(r.memory) << ',' << to_string(r.load) << ',' << (r.t ? std::to_string(*r.t) : std::string()) << ','
       << r.type_label << ',' << r.kind << ',' << format_float(to_double(r.memory)) << ','
       << format_float(to_double(r.load)) << ',' << r.status << '\n';
  }
  return os.str();
}

std::string envelope_json(const Envelope& env, int n_files, int n_users, int overlap,
                          const std::optional<Rational>& evaluated_at) {
  auto point = [](const LoadPoint& p) {
    Json e;
    e["t"] = p.t;
    e["M"] = to_string(p.memory);
    e["load"] = to_string(p.load);
    return e;
  };
  Json root;
  root["N"] = n_files;
  root["K"] = n_users;
  root["r"] = overlap;
  root["s_or_avg"] = env.points.empty() ? std::string() : env.points.front().type_label();
  Json points = Json::array();
  for (const auto& p : env.points) points.push_back(point(p));
  root["points"] = std::move(points);
  Json hull = Json::array();
  for (const auto& p : env.hull) hull.push_back(point(p));
  root["hull"] = std::move(hull);
  if (evaluated_at) {
    root["at_M"] = to_string(*evaluated_at);
    root["value"] = to_string(envelope_eval(env, *evaluated_at));
  }
  return root.dump(2) + "\n";
}

}  // namespace corrcache
