#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrcache/model.hpp"

namespace corrcache {

/// One (memory, load) pair at an integral replication level t.
/// `demand_type` is s for a per-type point, nullopt for the demand average.
struct LoadPoint {
  Rational memory;
  Rational load;
  int t = 0;
  std::optional<int> demand_type;

  bool is_average() const { return !demand_type.has_value(); }
  /// `s` or `avg`
  std::string type_label() const;
};

/// Corner points plus the lower convex envelope through them.
struct Envelope {
  std::vector<LoadPoint> points;
  /// Subsequence of `points` (increasing memory) forming the lower convex hull.
  std::vector<LoadPoint> hull;
};

/// c^s_t = sum_{j=1}^{min{N-r+1,K-t,s}} C(N-j,r-1) C(K-j,t) / (C(N-1,r-1) C(K,t)).
Rational load_coefficient(int n_files, int n_users, int overlap, int t, int s);

/// E_{d in [N]^K} c^{N_e(d)}_t, weighted by count_demands_with_s_distinct.
Rational average_coefficient(int n_files, int n_users, int overlap, int t);

/// Memory at corner t: N t / (K r).
Rational corner_memory(int n_files, int n_users, int overlap, int t);

/// Lower convex hull of points sorted by memory (ties keep the lowest load).
std::vector<LoadPoint> lower_convex_hull(std::vector<LoadPoint> points);

Envelope converse_envelope_type(int n_files, int n_users, int overlap, int s);
Envelope converse_envelope_average(int n_files, int n_users, int overlap);

/// Piecewise-linear evaluation on the hull (memory sharing between corners).
/// Throws ModelError when M lies outside the hull's memory range.
Rational envelope_eval(const Envelope& env, const Rational& memory);

/// Load of the round-division baseline: each file's blocks are assigned to
/// rounds in lexicographic order, every round is served as a MAN problem on
/// blocks. Needs an integral t. Result in file units.
Rational baseline_round_division_load(const ProblemInstance& inst, const DemandVector& d);

}  // namespace corrcache
