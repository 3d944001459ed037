#pragma once

#include <bit>
#include <map>
#include <utility>
#include <vector>

#include "corrcache/model.hpp"
#include "oracles.hpp"

namespace corrcache::oracle {

// Dense decodability check with its own coordinate system: columns are all
// (file mask, user mask) pairs of the right popcounts, in mask order.
class DenseDecoder {
 public:
  DenseDecoder(int n_files, int n_users, int overlap, int t) : n_users_(n_users) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_files); ++s) {
      if (std::popcount(s) != overlap) continue;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n_users); ++v) {
        if (std::popcount(v) != t) continue;
        column_[{s, v}] = keys_.size();
        keys_.emplace_back(s, v);
      }
    }
  }

  std::size_t width() const { return keys_.size(); }

  Dense row(const std::vector<SubBlockId>& terms) const {
    Dense v(width(), 0);
    for (const auto& id : terms) v[column_.at({id.block.files.mask(), id.cached_by.mask()})] ^= 1;
    return v;
  }

  // Number of wanted, non-derivable columns for user k.
  std::size_t missing(int user, std::uint64_t wanted_files, const std::vector<std::vector<SubBlockId>>& rows) const {
    std::vector<Dense> know;
    const std::uint64_t me = std::uint64_t{1} << (user - 1);
    for (std::size_t c = 0; c < width(); ++c) {
      if (keys_[c].second & me) know.push_back(unit(width(), c));
    }
    for (const auto& r : rows) know.push_back(row(r));
    const std::size_t base = rank(know);
    std::size_t missing = 0;
    for (std::size_t c = 0; c < width(); ++c) {
      if ((keys_[c].first & wanted_files) == 0) continue;
      know.push_back(unit(width(), c));
      if (rank(know) != base) ++missing;
      know.pop_back();
    }
    return missing;
  }

  bool all_decode(const std::vector<int>& demand, const std::vector<std::vector<SubBlockId>>& rows) const {
    for (int k = 1; k <= n_users_; ++k) {
      if (missing(k, std::uint64_t{1} << (demand[static_cast<std::size_t>(k - 1)] - 1), rows) != 0) return false;
    }
    return true;
  }

 private:
  int n_users_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> column_;
};

}  // namespace corrcache::oracle
