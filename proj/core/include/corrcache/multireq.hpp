#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrcache/verify.hpp"

namespace corrcache {

/// Multi-request instances (each user asks for L = 2 independent files,
/// M = N/K, MAN placement with t = 1) for which an aligned delivery code
/// reaches the MAN-placement converse.
enum class MultiRequestCaseId { kD7, kD15p, kD17p, kD20p };

/// Subfile F_{i,{w}}: part of file i cached by user w.
struct Subfile {
  int file = 0;
  int user = 0;
};

struct MultiRequestCase {
  MultiRequestCaseId id = MultiRequestCaseId::kD7;
  int n_files = 0;
  int n_users = 0;
  /// Entry k-1: files wanted by user k.
  std::vector<IndexSet> demands;
  std::vector<int> leader_order;
  /// Each combination is the XOR of its subfiles.
  std::vector<std::vector<Subfile>> combos;
  Rational expected_load;
  /// Load of the earlier round-based multi-request scheme, quoted for
  /// reports only.
  Rational reference_prior_load;
};

std::string to_string(MultiRequestCaseId id);
/// Accepts D7, D15p, D17p, D20p (case-insensitive; a trailing ' for p is also
/// accepted). Throws ModelError on anything else.
MultiRequestCaseId parse_multirequest_case(std::string_view name);
std::vector<MultiRequestCaseId> all_multirequest_cases();

MultiRequestCase multirequest_code(MultiRequestCaseId id);

/// Subfile F_{i,{w}} as a sub-block of the r = 1, t = 1 universe.
SubBlockId as_subblock(const Subfile& f);

/// Oracle check: every user recovers both wanted files from Z_k = {F_{i,{k}}}
/// and the code. `matches_coefficient` reports load == expected_load.
VerificationResult verify_multirequest(MultiRequestCaseId id);
VerificationResult verify_multirequest(const MultiRequestCase& c);

/// Correlated-file instance equivalent to a multi-request case, when one
/// exists: block W_S of the correlated library plays the role of file
/// rank(S)+1, and each correlated demand covers exactly a user's two files.
struct CorrelatedBridge {
  ProblemInstance instance;
  DemandVector demand;
  LeaderPermutation leaders;
};

std::optional<CorrelatedBridge> correlated_bridge(MultiRequestCaseId id);

/// Rewrites a correlated transmission into subfile terms under the bridge's
/// block renaming. Rows come back in canonical (sorted) form.
std::vector<std::vector<SubBlockId>> bridge_to_subfiles(const CorrelatedBridge& bridge, const Transmission& tx);

/// Canonical (sorted) subfile rows of a case's code.
std::vector<std::vector<SubBlockId>> canonical_code_rows(const MultiRequestCase& c);

}  // namespace corrcache
