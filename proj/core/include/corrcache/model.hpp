#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corrcache/index_set.hpp"
#include "corrcache/rational.hpp"

namespace corrcache {

/// Thrown for parameter combinations outside the model (bad N, K, M, r,
/// demand entries, leader choices). The CLI maps it to its own exit code.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An (N, K, M, r) shared-link caching problem with correlated files.
///
/// Each of the N files is made of C(N-1, r-1) equal blocks; block W_S is the
/// part shared exclusively by the r files in S. The cache-replication level
/// t = K*M*r/N is kept exact; scheme construction needs it integral.
struct ProblemInstance {
  int n_files = 0;
  int n_users = 0;
  Rational memory;
  int overlap = 0;
  Rational t;

  bool integral_t() const;
  /// Throws ModelError when t is not an integer in [0, K].
  int t_int() const;
  /// Sub-blocks per file, C(N-1,r-1)*C(K,t): the normalising unit for loads.
  std::uint64_t subblocks_per_file() const;
  /// C(N,r)*C(K,t)
  std::uint64_t universe_size() const;

  std::string describe() const;
};

/// Validates and builds an instance. Rejects r outside [1,N], M < 0 and
/// M > N/r with distinct messages.
ProblemInstance new_instance(int n_files, int n_users, const Rational& memory, int overlap);

/// Instance at the memory corner for an integral t, i.e. M = N*t/(K*r).
ProblemInstance instance_at_corner(int n_files, int n_users, int overlap, int t);

/// Block W_S, identified by its r-subset S of files.
struct BlockId {
  IndexSet files;

  friend bool operator==(const BlockId&, const BlockId&) = default;
  friend bool operator<(const BlockId& a, const BlockId& b) { return a.files < b.files; }
};

/// Sub-block W_{S,V}: the bits of W_S cached exactly by the users in V.
struct SubBlockId {
  BlockId block;
  IndexSet cached_by;

  /// `S{1,2}|V{2,3}`
  std::string to_string() const;
  static SubBlockId parse(std::string_view text);

  friend bool operator==(const SubBlockId&, const SubBlockId&) = default;
  friend bool operator<(const SubBlockId& a, const SubBlockId& b) {
    if (!(a.block == b.block)) return a.block < b.block;
    return a.cached_by < b.cached_by;
  }
};

/// Demand vector d; entry k-1 is the file requested by user k.
struct DemandVector {
  std::vector<int> demands;

  int n_users() const { return static_cast<int>(demands.size()); }
  /// d_k for 1-based user k.
  int of(int user) const { return demands.at(static_cast<std::size_t>(user - 1)); }
  IndexSet files_of(IndexSet users) const;
  int distinct_count() const;
};

/// Checks length K and every entry in [1, N].
DemandVector make_demand(const ProblemInstance& inst, std::vector<int> demands);

enum class LeaderPolicy { kFirstOccurrence, kExplicit };

/// Ordered leaders u = (u_1, ..., u_{N_e(d)}), one per distinct demanded file.
struct LeaderPermutation {
  std::vector<int> leaders;
  LeaderPolicy policy = LeaderPolicy::kFirstOccurrence;

  int size() const { return static_cast<int>(leaders.size()); }
};

std::vector<BlockId> enumerate_blocks(const ProblemInstance& inst);
std::vector<BlockId> blocks_of_file(const ProblemInstance& inst, int file);

int demand_distinct_count(const DemandVector& d);

/// Default policy: lowest-indexed user per distinct file, ordered by first
/// occurrence in d.
LeaderPermutation choose_leaders(const DemandVector& d);
/// Validates an explicit order; throws ModelError unless it names exactly one
/// user per distinct demanded file.
LeaderPermutation choose_leaders(const DemandVector& d, std::vector<int> explicit_order);

/// Number of vectors in [N]^K with exactly s distinct entries,
/// C(N,s) times the number of surjections [K] -> [s].
BigInt count_demands_with_s_distinct(int n_files, int n_users, int s);

/// Calls `fn(const DemandVector&)` for every vector in [N]^K in lexicographic
/// order.
template <typename Fn>
void for_each_demand(int n_files, int n_users, Fn&& fn) {
  DemandVector d{std::vector<int>(static_cast<std::size_t>(n_users), 1)};
  while (true) {
    fn(static_cast<const DemandVector&>(d));
    int k = n_users - 1;
    while (k >= 0 && d.demands[static_cast<std::size_t>(k)] == n_files) {
      d.demands[static_cast<std::size_t>(k)] = 1;
      --k;
    }
    if (k < 0) return;
    ++d.demands[static_cast<std::size_t>(k)];
  }
}

}  // namespace corrcache
