#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "corrcache/gf2.hpp"
#include "corrcache/model.hpp"
#include "corrcache/placement.hpp"
#include "corrcache/scheme.hpp"

namespace corrcache {

/// Thrown when a combination references a sub-block outside the universe.
class UniverseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UserDecode {
  int user = 0;
  std::vector<SubBlockId> desired;
  std::vector<SubBlockId> recovered;
  std::vector<SubBlockId> missing;
};

struct DecodeReport {
  std::vector<UserDecode> per_user;
  bool all_decodable = true;
};

/// Knowledge of one user as a GF(2) row space over the universe: a unit row
/// per cached sub-block and the indicator row of every received combination.
Gf2Matrix user_knowledge_matrix(int user, const SubBlockUniverse& universe, const CacheAssignment& cache,
                                const std::vector<std::vector<SubBlockId>>& rows);
Gf2Matrix user_knowledge_matrix(int user, const SubBlockUniverse& universe, const CacheAssignment& cache,
                                const Transmission& tx);

/// Span-membership decoding: user k wants every sub-block whose block meets
/// `wanted_files[k-1]` and recovers the ones whose unit vector lies in its
/// knowledge row space.
DecodeReport decode_check_sets(const SubBlockUniverse& universe, const std::vector<IndexSet>& wanted_files,
                               const CacheAssignment& cache, const std::vector<std::vector<SubBlockId>>& rows);

/// Single-request form: user k wants F_{d_k}, i.e. every W_{S,V} with d_k in S.
DecodeReport decode_check(const ProblemInstance& inst, const DemandVector& d, const CacheAssignment& cache,
                          const Transmission& tx);

/// Combinations sent divided by sub-blocks per file.
Rational measured_load(const ProblemInstance& inst, const Transmission& tx);

struct VerificationResult {
  bool decodable = false;
  Rational load;
  bool matches_coefficient = false;
  LeaderPermutation leaders;
  DecodeReport report;
};

/// placement -> delivery -> decode -> load. Uses the default leader policy
/// unless `leaders` is given.
VerificationResult verify_demand(const ProblemInstance& inst, const DemandVector& d,
                                 const std::optional<LeaderPermutation>& leaders = std::nullopt);

/// Which optimality cases an (instance, demand) falls in.
struct OptimalityCases {
  bool distinct_demands = false;  // N >= K and all K demands distinct
  bool overlap_extreme = false;   // r in {1, 2, N-1, N}
  bool memory_extreme = false;    // t in {0, 1, 2, K-1, K}

  bool any() const { return distinct_demands || overlap_extreme || memory_extreme; }
};

OptimalityCases classify(int n_files, int n_users, int overlap, int t, const DemandVector& d);

enum class DemandFilter {
  kAll,        // every vector in [N]^K
  kMustPass,   // only demands inside an optimality case
  kDistinct,   // only demands with K distinct entries
};

struct SweepGrid {
  int n_min = 1;
  int n_max = 5;
  int k_min = 1;
  int k_max = 5;
  /// Empty means every r in [1, N].
  std::vector<int> overlaps;
  /// Empty means every t in [0, K].
  std::vector<int> ts;
};

struct SweepFailure {
  DemandVector demand;
  bool must_pass = false;
  bool decodable = false;
  Rational load;
};

struct SweepCell {
  int n_files = 0;
  int n_users = 0;
  int overlap = 0;
  int t = 0;
  Rational memory;
  std::size_t demands_checked = 0;
  std::size_t must_pass = 0;
  std::size_t must_pass_failures = 0;
  /// Undecodable demands outside every optimality case; reported, not errors.
  std::size_t other_failures = 0;
  /// Max load over must-pass demands against c^{min{K,N}}_t.
  Rational worst_load;
  Rational worst_expected;
  bool worst_case_ok = true;
  /// Sum of measured loads over checked demands; with DemandFilter::kAll this
  /// divided by N^K is the demand-averaged load.
  Rational load_sum;
  /// First few failures, for diagnostics.
  std::vector<SweepFailure> failures;

  bool passed() const { return must_pass_failures == 0 && worst_case_ok; }
};

struct SweepReport {
  std::vector<SweepCell> cells;
  std::size_t total_must_pass = 0;
  std::size_t total_must_pass_failures = 0;

  bool passed() const;
};

/// Verifies every demand allowed by `filter` on every grid cell. Cells run on
/// `threads` workers (0 = hardware concurrency); output order is the grid
/// order regardless.
SweepReport sweep_verify(const SweepGrid& grid, DemandFilter filter, unsigned threads = 0);

/// One cell of the sweep.
SweepCell verify_cell(int n_files, int n_users, int overlap, int t, DemandFilter filter);

}  // namespace corrcache
