#pragma once

#include <vector>

#include "corrcache/model.hpp"

namespace corrcache {

/// Identifies one group of blocks in the delivery: step j, user set J
/// (|J| = t+1, containing the step leader u_j) and residue B = S \ d(J)
/// shared by every block S of the group.
struct GroupTag {
  int step = 0;
  IndexSet users;
  IndexSet residue;

  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

/// One transmitted symbol: the XOR of `terms`. `row_index` is the 1-based
/// coordinate p of the row within its group.
struct LinearCombination {
  std::vector<SubBlockId> terms;
  GroupTag origin;
  int row_index = 0;
};

/// The broadcast message X(d, Z) as an ordered list of combinations.
struct Transmission {
  std::vector<LinearCombination> combinations;
  DemandVector demand;
  LeaderPermutation leaders;
};

/// Blocks of one group, u_j-demanded blocks first; `leader_count` of them.
struct BlockGroup {
  GroupTag tag;
  std::vector<BlockId> blocks;
  int leader_count = 0;
};

/// U_J: blocks demanded by at least one user of J. Throws on empty J.
std::vector<BlockId> union_blocks(const ProblemInstance& inst, IndexSet users, const DemandVector& d);
/// I_J: blocks demanded by every user of J. Throws on empty J.
std::vector<BlockId> intersection_blocks(const ProblemInstance& inst, IndexSet users, const DemandVector& d);

/// C^j_J: U_J minus every block shared by two of the first j leaders' files.
/// Throws ModelError when (j, J) is not a valid step/user-set pair.
std::vector<BlockId> candidate_blocks(const ProblemInstance& inst, int step, IndexSet users,
                                      const LeaderPermutation& u, const DemandVector& d);

/// Splits C^j_J by residue. Groups come out in residue order; inside a group
/// the blocks demanded by u_j come first, each segment lexicographic. Groups
/// whose blocks avoid d_{u_j} are returned too, with leader_count 0.
std::vector<BlockGroup> partition_groups(const ProblemInstance& inst, int step, IndexSet users,
                                         const LeaderPermutation& u, const DemandVector& d);

/// n^j_{J,B}, the number of rows sent for a group: the number of its blocks
/// demanded by u_j, C(|d(J) \ {d_{u_1..u_{j-1}}}| - 1, r - |B| - 1), or zero
/// when B holds an earlier leader's file.
int group_combination_count(const ProblemInstance& inst, int step, IndexSet users, IndexSet residue,
                            const LeaderPermutation& u, const DemandVector& d);

/// Rows for one group. Row p carries the u_j-demanded block S_p on its own
/// coordinate; every other block S_q of the group is added to each row p'
/// with |S_p' ∩ S_q| = r-1. Each block contributes the XOR of
/// W_{S, J\{k}} over k in J with d_k in S.
///
/// Throws std::logic_error if a block outside the first `leader_count` is
/// demanded by u_j or one inside is not.
std::vector<LinearCombination> emit_group_combinations(const ProblemInstance& inst, const BlockGroup& group,
                                                       const LeaderPermutation& u, const DemandVector& d);

/// Number of delivery steps, min{N-r+1, K-t, N_e(d)}.
int step_count(const ProblemInstance& inst, const DemandVector& d);

/// Full delivery for demand d with leader order u. Deterministic: steps in
/// order, user sets J lexicographic, groups by residue.
Transmission build_delivery(const ProblemInstance& inst, const DemandVector& d, const LeaderPermutation& u);

/// Canonical form used for set comparisons: each row's terms sorted, rows
/// sorted.
std::vector<std::vector<SubBlockId>> canonical_rows(const Transmission& tx);

}  // namespace corrcache
