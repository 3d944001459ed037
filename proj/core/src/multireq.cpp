#include "corrcache/multireq.hpp"

#include <algorithm>
#include <cctype>

namespace corrcache {

namespace {

using Code = std::vector<std::vector<Subfile>>;

// Two-term XOR F_{a,{x}} ^ F_{b,{y}}.
std::vector<Subfile> x(int a, int ua, int b, int ub) { return {Subfile{a, ua}, Subfile{b, ub}}; }

std::vector<std::vector<SubBlockId>> canonical(std::vector<std::vector<SubBlockId>> rows) {
  for (auto& r : rows) std::sort(r.begin(), r.end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

std::string to_string(MultiRequestCaseId id) {
  switch (id) {
    case MultiRequestCaseId::kD7:
      return "D7";
    case MultiRequestCaseId::kD15p:
      return "D15p";
    case MultiRequestCaseId::kD17p:
      return "D17p";
    case MultiRequestCaseId::kD20p:
      return "D20p";
  }
  return "?";
}

MultiRequestCaseId parse_multirequest_case(std::string_view name) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!key.empty() && key.back() == '\'') key.back() = 'p';
  for (MultiRequestCaseId id : all_multirequest_cases()) {
    std::string candidate = to_string(id);
    for (char& c : candidate) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (candidate == key) return id;
  }
  throw ModelError("unknown multi-request case '" + std::string(name) + "' (expected D7, D15p, D17p or D20p)");
}

std::vector<MultiRequestCaseId> all_multirequest_cases() {
  return {MultiRequestCaseId::kD7, MultiRequestCaseId::kD15p, MultiRequestCaseId::kD17p, MultiRequestCaseId::kD20p};
}

MultiRequestCase multirequest_code(MultiRequestCaseId id) {
  MultiRequestCase c;
  c.id = id;
  switch (id) {
    case MultiRequestCaseId::kD7:
      c.n_files = 3;
      c.n_users = 3;
      c.demands = {IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}};
      c.leader_order = {1, 2, 3};
      c.combos = Code{x(1, 2, 1, 1), x(1, 3, 3, 1), x(2, 2, 3, 1), x(2, 3, 2, 1), x(3, 3, 3, 2)};
      c.expected_load = Rational(5, 3);
      c.reference_prior_load = Rational(2);
      break;
    case MultiRequestCaseId::kD15p:
      c.n_files = 5;
      c.n_users = 4;
      c.demands = {IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}, IndexSet{4, 5}};
      c.leader_order = {4, 1, 2, 3};
      c.combos = Code{x(4, 1, 1, 4), x(4, 2, 1, 4), x(4, 3, 3, 4),  //
                      x(5, 1, 2, 4), x(5, 2, 3, 4), x(5, 3, 2, 4),  //
                      x(1, 2, 1, 1), x(1, 3, 3, 1), x(2, 2, 3, 1),  //
                      x(2, 3, 2, 1), x(3, 3, 3, 2)};
      c.expected_load = Rational(11, 4);
      c.reference_prior_load = Rational(3);
      break;
    case MultiRequestCaseId::kD17p:
      c.n_files = 4;
      c.n_users = 4;
      c.demands = {IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{1, 4}, IndexSet{2, 3}};
      c.leader_order = {3, 4, 1, 2};
      c.combos = Code{x(1, 1, 1, 3), x(1, 2, 1, 3), x(1, 4, 3, 3),  //
                      x(4, 1, 2, 3), x(4, 2, 3, 3), x(4, 4, 2, 3),  //
                      x(3, 1, 1, 4), x(3, 2, 3, 4), x(2, 1, 2, 4),  //
                      x(2, 2, 1, 4)};
      c.expected_load = Rational(10, 4);
      c.reference_prior_load = Rational(11, 4);
      break;
    case MultiRequestCaseId::kD20p:
      c.n_files = 3;
      c.n_users = 4;
      c.demands = {IndexSet{1, 2}, IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}};
      c.leader_order = {1, 3, 4};
      c.combos = Code{x(1, 2, 1, 1), x(1, 3, 1, 1), x(1, 4, 3, 1),  //
                      x(2, 2, 2, 1), x(2, 3, 3, 1), x(2, 4, 2, 1),  //
                      x(3, 2, 2, 3), x(3, 4, 3, 3)};
      c.expected_load = Rational(2);
      c.reference_prior_load = Rational(9, 4);
      break;
  }
  return c;
}

SubBlockId as_subblock(const Subfile& f) { return SubBlockId{BlockId{IndexSet{f.file}}, IndexSet{f.user}}; }

std::vector<std::vector<SubBlockId>> canonical_code_rows(const MultiRequestCase& c) {
  std::vector<std::vector<SubBlockId>> rows;
  for (const auto& combo : c.combos) {
    std::vector<SubBlockId> terms;
    for (const Subfile& f : combo) terms.push_back(as_subblock(f));
    rows.push_back(std::move(terms));
  }
  return canonical(std::move(rows));
}

VerificationResult verify_multirequest(MultiRequestCaseId id) { return verify_multirequest(multirequest_code(id)); }

VerificationResult verify_multirequest(const MultiRequestCase& c) {
  // t = 1 with r = 1: subfile F_{i,{w}} is sub-block W_{{i},{w}}.
  const ProblemInstance inst = instance_at_corner(c.n_files, c.n_users, 1, 1);
  const SubBlockUniverse universe(inst);
  const CacheAssignment cache = man_placement(inst);

  VerificationResult result;
  result.leaders = LeaderPermutation{c.leader_order, LeaderPolicy::kExplicit};
  result.report = decode_check_sets(universe, c.demands, cache, canonical_code_rows(c));
  result.decodable = result.report.all_decodable;
  result.load = Rational(c.combos.size(), c.n_users);
  result.matches_coefficient = result.load == c.expected_load;
  return result;
}

std::optional<CorrelatedBridge> correlated_bridge(MultiRequestCaseId id) {
  const MultiRequestCase c = multirequest_code(id);
  // A correlated (N', K, r = 2) library with C(N',2) blocks can stand in for
  // the multi-request library when every user's pair of files is exactly the
  // block set of one correlated file.
  for (int n = 2; n <= kMaxIndex; ++n) {
    if (static_cast<int>(binomial(n, 2)) > c.n_files) return std::nullopt;
    if (static_cast<int>(binomial(n, 2)) < c.n_files) continue;

    const ProblemInstance inst = new_instance(n, c.n_users, Rational(n, c.n_users * 2), 2);
    const std::vector<BlockId> blocks = enumerate_blocks(inst);
    auto rank_of = [&](const BlockId& b) {
      return static_cast<int>(std::find(blocks.begin(), blocks.end(), b) - blocks.begin()) + 1;
    };
    std::vector<int> demand;
    for (IndexSet wanted : c.demands) {
      int match = 0;
      for (int f = 1; f <= n; ++f) {
        IndexSet ranks;
        for (const BlockId& b : blocks_of_file(inst, f)) ranks.insert(rank_of(b));
        if (ranks == wanted) match = f;
      }
      if (match == 0) return std::nullopt;
      demand.push_back(match);
    }
    DemandVector d = make_demand(inst, std::move(demand));
    LeaderPermutation u = choose_leaders(d, c.leader_order);
    return CorrelatedBridge{inst, std::move(d), std::move(u)};
  }
  return std::nullopt;
}

std::vector<std::vector<SubBlockId>> bridge_to_subfiles(const CorrelatedBridge& bridge, const Transmission& tx) {
  const std::vector<BlockId> blocks = enumerate_blocks(bridge.instance);
  std::vector<std::vector<SubBlockId>> rows;
  for (const auto& combo : tx.combinations) {
    std::vector<SubBlockId> terms;
    for (const SubBlockId& id : combo.terms) {
      const int file = static_cast<int>(std::find(blocks.begin(), blocks.end(), id.block) - blocks.begin()) + 1;
      terms.push_back(SubBlockId{BlockId{IndexSet{file}}, id.cached_by});
    }
    rows.push_back(std::move(terms));
  }
  return canonical(std::move(rows));
}

}  // namespace corrcache
