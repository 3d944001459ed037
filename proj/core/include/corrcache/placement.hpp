#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "corrcache/model.hpp"

namespace corrcache {

/// Every sub-block W_{S,V} with |S| = r and |V| = t, in (S, V) lexicographic
/// order, with a column index for each. This is the coordinate system for all
/// GF(2) vectors.
class SubBlockUniverse {
 public:
  SubBlockUniverse(int n_files, int n_users, int overlap, int t);
  explicit SubBlockUniverse(const ProblemInstance& inst);

  std::size_t size() const { return ids_.size(); }
  const std::vector<SubBlockId>& ids() const { return ids_; }
  const SubBlockId& at(std::size_t column) const { return ids_.at(column); }
  /// nullopt when the id is not part of this universe.
  std::optional<std::size_t> index_of(const SubBlockId& id) const;

  int n_files() const { return n_files_; }
  int n_users() const { return n_users_; }
  int overlap() const { return overlap_; }
  int t() const { return t_; }

 private:
  int n_files_;
  int n_users_;
  int overlap_;
  int t_;
  std::vector<SubBlockId> ids_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Uncoded MAN-style placement: user k stores W_{S,V} iff k is in V.
struct CacheAssignment {
  int t = 0;
  /// Entry k-1 is Z_k, sorted.
  std::vector<std::vector<SubBlockId>> per_user;

  const std::vector<SubBlockId>& of(int user) const { return per_user.at(static_cast<std::size_t>(user - 1)); }
};

/// Requires an integral t.
CacheAssignment man_placement(const ProblemInstance& inst);

/// Size of user k's cache in file units, counted sub-block by sub-block.
Rational cache_size_files(const ProblemInstance& inst, const CacheAssignment& cache, int user);

}  // namespace corrcache
