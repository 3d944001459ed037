#include "corrcache/scheme.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace corrcache {

namespace {

void require_users(IndexSet users, const DemandVector& d) {
  if (users.empty()) throw ModelError("user set must be non-empty");
  if (!users.is_subset_of(IndexSet::range(d.n_users()))) {
    throw ModelError("user set " + users.to_string() + " is not a subset of [K]");
  }
}

IndexSet leader_files(const LeaderPermutation& u, const DemandVector& d, int count) {
  IndexSet files;
  for (int i = 0; i < count; ++i) files.insert(d.of(u.leaders[static_cast<std::size_t>(i)]));
  return files;
}

IndexSet leader_users(const LeaderPermutation& u, int count) {
  IndexSet users;
  for (int i = 0; i < count; ++i) users.insert(u.leaders[static_cast<std::size_t>(i)]);
  return users;
}

void require_step(const ProblemInstance& inst, int step, IndexSet users, const LeaderPermutation& u,
                  const DemandVector& d) {
  require_users(users, d);
  if (step < 1 || step > u.size()) {
    throw ModelError("step " + std::to_string(step) + " outside [1, " + std::to_string(u.size()) + "]");
  }
  const int leader = u.leaders[static_cast<std::size_t>(step - 1)];
  if (!users.contains(leader)) {
    throw ModelError("user set " + users.to_string() + " does not contain the step leader " + std::to_string(leader));
  }
  if (users.intersects(leader_users(u, step - 1))) {
    throw ModelError("user set " + users.to_string() + " contains a leader of an earlier step");
  }
  if (inst.integral_t() && users.size() != inst.t_int() + 1) {
    throw ModelError("user set " + users.to_string() + " must have t+1 = " + std::to_string(inst.t_int() + 1) +
                     " members");
  }
}

// XOR of W_{S, J\{k}} over k in J with d_k in S, in increasing k.
void append_block_terms(std::vector<SubBlockId>& out, const BlockId& block, IndexSet users, const DemandVector& d) {
  for (int k : users.elements()) {
    if (block.files.contains(d.of(k))) {
      IndexSet rest = users;
      rest.erase(k);
      out.push_back(SubBlockId{block, rest});
    }
  }
}

}  // namespace

std::vector<BlockId> union_blocks(const ProblemInstance& inst, IndexSet users, const DemandVector& d) {
  require_users(users, d);
  const IndexSet files = d.files_of(users);
  std::vector<BlockId> out;
  for (const BlockId& b : enumerate_blocks(inst)) {
    if (b.files.intersects(files)) out.push_back(b);
  }
  return out;
}

std::vector<BlockId> intersection_blocks(const ProblemInstance& inst, IndexSet users, const DemandVector& d) {
  require_users(users, d);
  const IndexSet files = d.files_of(users);
  std::vector<BlockId> out;
  for (const BlockId& b : enumerate_blocks(inst)) {
    if (files.is_subset_of(b.files)) out.push_back(b);
  }
  return out;
}

std::vector<BlockId> candidate_blocks(const ProblemInstance& inst, int step, IndexSet users,
                                      const LeaderPermutation& u, const DemandVector& d) {
  require_step(inst, step, users, u, d);
  // A block lies in some I_T with T a pair of the first j leader files iff it
  // holds at least two of those files.
  const IndexSet served = leader_files(u, d, step);
  std::vector<BlockId> out;
  for (const BlockId& b : union_blocks(inst, users, d)) {
    if ((b.files & served).size() < 2) out.push_back(b);
  }
  return out;
}

std::vector<BlockGroup> partition_groups(const ProblemInstance& inst, int step, IndexSet users,
                                         const LeaderPermutation& u, const DemandVector& d) {
  const std::vector<BlockId> candidates = candidate_blocks(inst, step, users, u, d);
  const IndexSet demanded = d.files_of(users);
  const int leader_file = d.of(u.leaders[static_cast<std::size_t>(step - 1)]);

  std::map<IndexSet, BlockGroup> by_residue;
  for (const BlockId& b : candidates) {
    const IndexSet residue = b.files - demanded;
    auto [it, inserted] = by_residue.try_emplace(residue);
    if (inserted) it->second.tag = GroupTag{step, users, residue};
    it->second.blocks.push_back(b);
  }
  std::vector<BlockGroup> out;
  out.reserve(by_residue.size());
  for (auto& [residue, group] : by_residue) {
    // candidates are lexicographic already; a stable partition keeps each
    // segment that way.
    auto mid = std::stable_partition(group.blocks.begin(), group.blocks.end(),
                                     [&](const BlockId& b) { return b.files.contains(leader_file); });
    group.leader_count = static_cast<int>(mid - group.blocks.begin());
    out.push_back(std::move(group));
  }
  return out;
}

int group_combination_count(const ProblemInstance& inst, int step, IndexSet users, IndexSet residue,
                            const LeaderPermutation& u, const DemandVector& d) {
  require_step(inst, step, users, u, d);
  const IndexSet earlier = leader_files(u, d, step - 1);
  if (residue.intersects(earlier)) return 0;
  const int fresh = (d.files_of(users) - earlier).size();
  return static_cast<int>(binomial(fresh - 1, inst.overlap - residue.size() - 1));
}

std::vector<LinearCombination> emit_group_combinations(const ProblemInstance& inst, const BlockGroup& group,
                                                       const LeaderPermutation& u, const DemandVector& d) {
  const int n = group.leader_count;
  const int leader_file = d.of(u.leaders[static_cast<std::size_t>(group.tag.step - 1)]);
  for (std::size_t i = 0; i < group.blocks.size(); ++i) {
    const bool is_leader_block = group.blocks[i].files.contains(leader_file);
    if (is_leader_block != (static_cast<int>(i) < n)) {
      throw std::logic_error("group " + group.tag.users.to_string() + "/" + group.tag.residue.to_string() +
                             ": blocks demanded by the step leader must come first");
    }
  }
  std::vector<LinearCombination> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    LinearCombination row;
    row.origin = group.tag;
    row.row_index = p + 1;
    const BlockId& own = group.blocks[static_cast<std::size_t>(p)];
    append_block_terms(row.terms, own, group.tag.users, d);
    for (std::size_t q = static_cast<std::size_t>(n); q < group.blocks.size(); ++q) {
      const BlockId& other = group.blocks[q];
      if ((own.files & other.files).size() == inst.overlap - 1) {
        append_block_terms(row.terms, other, group.tag.users, d);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int step_count(const ProblemInstance& inst, const DemandVector& d) {
  return std::min({inst.n_files - inst.overlap + 1, inst.n_users - inst.t_int(), d.distinct_count()});
}

Transmission build_delivery(const ProblemInstance& inst, const DemandVector& d, const LeaderPermutation& u) {
  const int t = inst.t_int();
  if (d.n_users() != inst.n_users) throw ModelError("demand length does not match K");
  if (u.size() != d.distinct_count()) throw ModelError("leader permutation does not cover every demanded file");

  Transmission tx{{}, d, u};
  // t = K leaves no step; t = 0 reduces to one plain row per demanded block,
  // which the general construction already produces (J = {u_j}, one block per
  // group).
  const int steps = step_count(inst, d);
  IndexSet available = IndexSet::range(inst.n_users);
  for (int j = 1; j <= steps; ++j) {
    const int leader = u.leaders[static_cast<std::size_t>(j - 1)];
    for (IndexSet users : k_subsets_of(available, t + 1)) {
      if (!users.contains(leader)) continue;
      for (const BlockGroup& group : partition_groups(inst, j, users, u, d)) {
        if (group.leader_count == 0) continue;
        auto rows = emit_group_combinations(inst, group, u, d);
        std::move(rows.begin(), rows.end(), std::back_inserter(tx.combinations));
      }
    }
    available.erase(leader);
  }
  return tx;
}

std::vector<std::vector<SubBlockId>> canonical_rows(const Transmission& tx) {
  std::vector<std::vector<SubBlockId>> rows;
  rows.reserve(tx.combinations.size());
  for (const auto& c : tx.combinations) {
    auto terms = c.terms;
    std::sort(terms.begin(), terms.end());
    rows.push_back(std::move(terms));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace corrcache
