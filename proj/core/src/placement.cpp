#include "corrcache/placement.hpp"

namespace corrcache {

namespace {

std::uint64_t key_of(const SubBlockId& id) { return (id.block.files.mask() << 32) | id.cached_by.mask(); }

}  // namespace

SubBlockUniverse::SubBlockUniverse(int n_files, int n_users, int overlap, int t)
    : n_files_(n_files), n_users_(n_users), overlap_(overlap), t_(t) {
  const auto blocks = k_subsets(n_files, overlap);
  const auto user_sets = k_subsets(n_users, t);
  ids_.reserve(blocks.size() * user_sets.size());
  for (IndexSet s : blocks) {
    for (IndexSet v : user_sets) ids_.push_back(SubBlockId{BlockId{s}, v});
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(key_of(ids_[i]), i);
}

SubBlockUniverse::SubBlockUniverse(const ProblemInstance& inst)
    : SubBlockUniverse(inst.n_files, inst.n_users, inst.overlap, inst.t_int()) {}

std::optional<std::size_t> SubBlockUniverse::index_of(const SubBlockId& id) const {
  const auto it = index_.find(key_of(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CacheAssignment man_placement(const ProblemInstance& inst) {
  const int t = inst.t_int();
  CacheAssignment cache;
  cache.t = t;
  cache.per_user.resize(static_cast<std::size_t>(inst.n_users));
  for (IndexSet s : k_subsets(inst.n_files, inst.overlap)) {
    for (IndexSet v : k_subsets(inst.n_users, t)) {
      for (int k : v.elements()) cache.per_user[static_cast<std::size_t>(k - 1)].push_back(SubBlockId{BlockId{s}, v});
    }
  }
  return cache;
}

Rational cache_size_files(const ProblemInstance& inst, const CacheAssignment& cache, int user) {
  return Rational(cache.of(user).size(), inst.subblocks_per_file());
}

}  // namespace corrcache
