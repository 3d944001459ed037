#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "corrcache/bounds.hpp"
#include "corrcache/multireq.hpp"
#include "corrcache/scheme.hpp"
#include "corrcache/serialize.hpp"
#include "corrcache/verify.hpp"

namespace corrcache::cli {

namespace {

// Demand-average baselines enumerate [N]^K; beyond this they are skipped.
constexpr double kMaxBaselineDemands = 200000;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(key + "=" + text + ": expected an integer");
  }
  return value;
}

std::vector<int> parse_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, item));
  if (out.empty()) throw UsageError(key + "=: expected a comma-separated list");
  return out;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

  bool has(const std::string& key) const { return p_.count(key) != 0; }

  const std::string& raw(const std::string& key) const {
    const auto it = p_.find(key);
    if (it == p_.end()) throw UsageError("missing required argument " + key + "=...");
    return it->second;
  }
  int integer(const std::string& key) const { return parse_int(key, raw(key)); }
  int integer_or(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }
  Rational rational(const std::string& key) const {
    try {
      return parse_rational(raw(key));
    } catch (const std::invalid_argument& e) {
      throw UsageError(key + ": " + e.what());
    }
  }
  std::vector<int> list(const std::string& key) const { return parse_list(key, raw(key)); }

 private:
  const std::map<std::string, std::string>& p_;
};

ProblemInstance instance_from(const Params& p) {
  return new_instance(p.integer("N"), p.integer("K"), p.rational("M"), p.integer("r"));
}

std::optional<LeaderPermutation> leaders_from(const Params& p, const DemandVector& d) {
  if (!p.has("leaders")) return std::nullopt;
  return choose_leaders(d, p.list("leaders"));
}

DemandVector canonical_demand_of_type(int n_users, int s) {
  DemandVector d;
  for (int k = 0; k < n_users; ++k) d.demands.push_back(k % s + 1);
  return d;
}

int demand_type(const Params& p, int n_files, int n_users) {
  const int s = p.integer_or("s", std::min(n_files, n_users));
  if (s < 1 || s > std::min(n_files, n_users)) throw ModelError("s must be in [1, min{K,N}]");
  return s;
}

bool optimal_case_for_type(int n_files, int n_users, int overlap, int t, std::optional<int> s) {
  const bool overlap_extreme = overlap == 1 || overlap == 2 || overlap == n_files - 1 || overlap == n_files;
  const bool memory_extreme = t <= 2 || t >= n_users - 1;
  const bool distinct = s && *s == n_users && n_files >= n_users;
  return overlap_extreme || memory_extreme || distinct;
}

int run_bound(const RunConfig& cfg, std::ostream& out) {
  const Params p(cfg.params);
  const int n = p.integer("N");
  const int k = p.integer("K");
  const int r = p.integer("r");
  if (r < 1 || r > n) throw ModelError("r must be in [1, N]");
  const Envelope env = cfg.average ? converse_envelope_average(n, k, r) : converse_envelope_type(n, k, r, demand_type(p, n, k));
  std::optional<Rational> at;
  if (p.has("M")) at = new_instance(n, k, p.rational("M"), r).memory;

  if (cfg.format == OutputFormat::kJson) {
    out << envelope_json(env, n, k, r, at);
    return kOk;
  }
  std::vector<CurveRow> rows;
  if (at) {
    std::optional<int> corner;
    for (const auto& pt : env.points) {
      if (pt.memory == *at) corner = pt.t;
    }
    rows.push_back(CurveRow{*at, envelope_eval(env, *at), corner, env.points.front().type_label(), "converse", "bound"});
  } else {
    for (const auto& pt : env.points) rows.push_back(CurveRow{pt.memory, pt.load, pt.t, pt.type_label(), "converse", "bound"});
  }
  out << curve_csv(rows);
  return kOk;
}

int run_achieve(const RunConfig& cfg, std::ostream& out) {
  const Params p(cfg.params);
  const ProblemInstance inst = instance_from(p);
  const DemandVector d = make_demand(inst, p.list("d"));
  const LeaderPermutation u = leaders_from(p, d).value_or(choose_leaders(d));
  const Transmission tx = build_delivery(inst, d, u);
  out << transmission_json(inst, tx);
  return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p(cfg.params);
  const ProblemInstance inst = instance_from(p);
  const DemandVector d = make_demand(inst, p.list("d"));
  const VerificationResult result = verify_demand(inst, d, leaders_from(p, d));
  out << verification_json(inst, d, result);
  if (!result.decodable) {
    err << "verification failed: at least one user is missing sub-blocks\n";
    return kVerificationFailed;
  }
  return kOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p(cfg.params);
  SweepGrid grid;
  grid.n_min = p.integer_or("Nmin", 1);
  grid.n_max = p.integer_or("Nmax", 5);
  grid.k_min = p.integer_or("Kmin", 1);
  grid.k_max = p.integer_or("Kmax", 5);
  if (p.has("N")) grid.n_min = grid.n_max = p.integer("N");
  if (p.has("K")) grid.k_min = grid.k_max = p.integer("K");
  if (p.has("r")) grid.overlaps = p.list("r");
  if (p.has("t")) grid.ts = p.list("t");
  if (grid.n_min < 1 || grid.k_min < 1 || grid.n_min > grid.n_max || grid.k_min > grid.k_max ||
      grid.n_max > kMaxIndex || grid.k_max > kMaxIndex) {
    throw ModelError("sweep ranges must satisfy 1 <= min <= max <= " + std::to_string(kMaxIndex));
  }
  const SweepReport report = sweep_verify(grid, cfg.filter, cfg.threads);
  out << (cfg.format == OutputFormat::kJson ? sweep_json(report) : sweep_csv(report));
  if (!report.passed()) {
    err << "sweep: " << report.total_must_pass_failures << " of " << report.total_must_pass
        << " must-pass demands failed\n";
    return kVerificationFailed;
  }
  return kOk;
}

int run_multireq(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p(cfg.params);
  std::vector<MultiRequestCaseId> ids = all_multirequest_cases();
  if (p.has("case") && p.raw("case") != "all") ids = {parse_multirequest_case(p.raw("case"))};
  std::vector<std::pair<MultiRequestCase, VerificationResult>> results;
  bool ok = true;
  for (MultiRequestCaseId id : ids) {
    MultiRequestCase c = multirequest_code(id);
    VerificationResult r = verify_multirequest(c);
    ok = ok && r.decodable && r.matches_coefficient;
    results.emplace_back(std::move(c), std::move(r));
  }
  out << multirequest_json(results);
  if (!ok) {
    err << "multireq: a code failed to decode or missed its load\n";
    return kVerificationFailed;
  }
  return kOk;
}

int run_curve(const RunConfig& cfg, std::ostream& out) {
  const Params p(cfg.params);
  const int n = p.integer("N");
  const int k = p.integer("K");
  const int r = p.integer("r");
  if (r < 1 || r > n) throw ModelError("r must be in [1, N]");
  const std::optional<int> s = cfg.average ? std::nullopt : std::optional<int>(demand_type(p, n, k));
  const Envelope env = s ? converse_envelope_type(n, k, r, *s) : converse_envelope_average(n, k, r);
  const std::string label = s ? std::to_string(*s) : "avg";

  std::vector<CurveRow> rows;
  for (const auto& pt : env.points) rows.push_back(CurveRow{pt.memory, pt.load, pt.t, label, "converse", "bound"});
  // The scheme sends c^{N_e(d)}_t at every corner; optimality is only
  // established inside the optimality cases.
  for (const auto& pt : env.points) {
    const bool certified = optimal_case_for_type(n, k, r, pt.t, s);
    rows.push_back(CurveRow{pt.memory, pt.load, pt.t, label, "scheme", certified ? "optimal" : "UNVERIFIED"});
  }
  const bool small = std::pow(static_cast<double>(n), static_cast<double>(k)) <= kMaxBaselineDemands;
  if (s || small) {
    for (int t = 0; t <= k; ++t) {
      const ProblemInstance inst = instance_at_corner(n, k, r, t);
      Rational load;
      if (s) {
        load = baseline_round_division_load(inst, canonical_demand_of_type(k, *s));
      } else {
        Rational total = 0;
        std::size_t count = 0;
        for_each_demand(n, k, [&](const DemandVector& d) {
          total += baseline_round_division_load(inst, d);
          ++count;
        });
        load = total / count;
      }
      rows.push_back(CurveRow{inst.memory, load, t, label, "baseline", "reference"});
    }
  }
  out << curve_csv(rows);
  return kOk;
}

Subcommand subcommand_of(const std::string& name) {
  if (name == "bound") return Subcommand::kBound;
  if (name == "achieve") return Subcommand::kAchieve;
  if (name == "verify") return Subcommand::kVerify;
  if (name == "sweep") return Subcommand::kSweep;
  if (name == "multireq") return Subcommand::kMultireq;
  return Subcommand::kCurve;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Coded caching with correlated files: bounds, schemes and GF(2) verification", "corrcache"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::vector<std::string> kv;
  std::string format = "csv";
  std::string filter = "must-pass";

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bound", "converse envelope for one demand type (s=) or the demand average (--avg)"},
      {"achieve", "build the delivery for N K M r d= and print it as JSON"},
      {"verify", "build and oracle-check the delivery for N K M r d="},
      {"sweep", "verify every demand on a grid of instances"},
      {"multireq", "verify the multi-request codes (case=D7|D15p|D17p|D20p|all)"},
      {"curve", "memory-load curve CSV: converse, scheme corners, round-division baseline"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("params", kv, "key=value arguments (N=, K=, M=p/q, r=, s=, d=1,2,..., leaders=...)");
    sub->add_flag("--avg", cfg.average, "use the demand-averaged bound");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "sweep workers (0 = all cores)");
    sub->add_option("--filter", filter, "sweep demands: all, must-pass or distinct")
        ->check(CLI::IsMember({"all", "must-pass", "distinct"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(std::string(e.what()) + "\n" + app.help());
  }

  cfg.subcommand = subcommand_of(app.get_subcommands().front()->get_name());
  cfg.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  cfg.filter = filter == "all" ? DemandFilter::kAll : filter == "distinct" ? DemandFilter::kDistinct
                                                                             : DemandFilter::kMustPass;
  for (const std::string& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("expected key=value, got '" + item + "'");
    }
    cfg.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int code = kOk;
  switch (config.subcommand) {
    case Subcommand::kBound:
      code = run_bound(config, buffer);
      break;
    case Subcommand::kAchieve:
      code = run_achieve(config, buffer);
      break;
    case Subcommand::kVerify:
      code = run_verify(config, buffer, err);
      break;
    case Subcommand::kSweep:
      code = run_sweep(config, buffer, err);
      break;
    case Subcommand::kMultireq:
      code = run_multireq(config, buffer, err);
      break;
    case Subcommand::kCurve:
      code = run_curve(config, buffer);
      break;
  }
  if (config.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << config.out_path << " for writing\n";
      return kIoError;
    }
    file << buffer.str();
  }
  return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(args, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  if (!config) return kOk;
  try {
    return run(*config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kModelError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace corrcache::cli
