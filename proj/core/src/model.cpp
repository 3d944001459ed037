#include "corrcache/model.hpp"

#include <algorithm>
#include <charconv>

namespace corrcache {

bool ProblemInstance::integral_t() const { return is_integer(t) && t >= 0 && t <= n_users; }

int ProblemInstance::t_int() const {
  if (!integral_t()) {
    throw ModelError("t = K*M*r/N = " + to_string(t) + " is not an integer in [0, K]; scheme construction needs an integral t");
  }
  return static_cast<int>(boost::multiprecision::numerator(t));
}

std::uint64_t ProblemInstance::subblocks_per_file() const {
  return binomial(n_files - 1, overlap - 1) * binomial(n_users, t_int());
}

std::uint64_t ProblemInstance::universe_size() const {
  return binomial(n_files, overlap) * binomial(n_users, t_int());
}

std::string ProblemInstance::describe() const {
  return "(N,K,M,r)=(" + std::to_string(n_files) + "," + std::to_string(n_users) + "," + to_string(memory) + "," +
         std::to_string(overlap) + ")";
}

ProblemInstance new_instance(int n_files, int n_users, const Rational& memory, int overlap) {
  if (n_files < 1 || n_files > kMaxIndex) {
    throw ModelError("N must be in [1, " + std::to_string(kMaxIndex) + "], got " + std::to_string(n_files));
  }
  if (n_users < 1 || n_users > kMaxIndex) {
    throw ModelError("K must be in [1, " + std::to_string(kMaxIndex) + "], got " + std::to_string(n_users));
  }
  if (overlap < 1) throw ModelError("r must be at least 1, got " + std::to_string(overlap));
  if (overlap > n_files) {
    throw ModelError("r = " + std::to_string(overlap) + " exceeds the number of files N = " + std::to_string(n_files));
  }
  if (memory < 0) throw ModelError("cache size M = " + to_string(memory) + " is negative");
  const Rational max_memory(n_files, overlap);
  if (memory > max_memory) {
    throw ModelError("cache size M = " + to_string(memory) + " exceeds N/r = " + to_string(max_memory) +
                     " (the whole library)");
  }
  ProblemInstance inst;
  inst.n_files = n_files;
  inst.n_users = n_users;
  inst.memory = memory;
  inst.overlap = overlap;
  inst.t = memory * n_users * overlap / n_files;
  return inst;
}

ProblemInstance instance_at_corner(int n_files, int n_users, int overlap, int t) {
  if (t < 0 || t > n_users) throw ModelError("t must be in [0, K], got " + std::to_string(t));
  return new_instance(n_files, n_users, Rational(n_files * t, n_users * overlap), overlap);
}

std::string SubBlockId::to_string() const { return "S" + block.files.to_string() + "|V" + cached_by.to_string(); }

namespace {

IndexSet parse_braced(std::string_view& rest, char tag, std::string_view whole) {
  auto fail = [&]() {
    return ModelError("malformed sub-block id '" + std::string(whole) + "' (expected S{..}|V{..})");
  };
  if (rest.size() < 3 || rest[0] != tag || rest[1] != '{') throw fail();
  rest.remove_prefix(2);
  const auto close = rest.find('}');
  if (close == std::string_view::npos) throw fail();
  std::string_view body = rest.substr(0, close);
  rest.remove_prefix(close + 1);
  IndexSet out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || value < 1 || value > kMaxIndex) throw fail();
    out.insert(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

SubBlockId SubBlockId::parse(std::string_view text) {
  std::string_view rest = text;
  SubBlockId id;
  id.block.files = parse_braced(rest, 'S', text);
  if (rest.empty() || rest[0] != '|') {
    throw ModelError("malformed sub-block id '" + std::string(text) + "' (missing '|')");
  }
  rest.remove_prefix(1);
  id.cached_by = parse_braced(rest, 'V', text);
  if (!rest.empty()) throw ModelError("malformed sub-block id '" + std::string(text) + "' (trailing text)");
  return id;
}

IndexSet DemandVector::files_of(IndexSet users) const {
  IndexSet files;
  for (int k : users.elements()) files.insert(of(k));
  return files;
}

int DemandVector::distinct_count() const {
  IndexSet files;
  for (int f : demands) files.insert(f);
  return files.size();
}

DemandVector make_demand(const ProblemInstance& inst, std::vector<int> demands) {
  if (static_cast<int>(demands.size()) != inst.n_users) {
    throw ModelError("demand vector has " + std::to_string(demands.size()) + " entries, expected K = " +
                     std::to_string(inst.n_users));
  }
  for (std::size_t k = 0; k < demands.size(); ++k) {
    if (demands[k] < 1 || demands[k] > inst.n_files) {
      throw ModelError("user " + std::to_string(k + 1) + " demands file " + std::to_string(demands[k]) +
                       ", outside [1, " + std::to_string(inst.n_files) + "]");
    }
  }
  return DemandVector{std::move(demands)};
}

std::vector<BlockId> enumerate_blocks(const ProblemInstance& inst) {
  std::vector<BlockId> out;
  for (IndexSet s : k_subsets(inst.n_files, inst.overlap)) out.push_back(BlockId{s});
  return out;
}

std::vector<BlockId> blocks_of_file(const ProblemInstance& inst, int file) {
  if (file < 1 || file > inst.n_files) {
    throw ModelError("file index " + std::to_string(file) + " outside [1, " + std::to_string(inst.n_files) + "]");
  }
  std::vector<BlockId> out;
  for (IndexSet s : k_subsets(inst.n_files, inst.overlap)) {
    if (s.contains(file)) out.push_back(BlockId{s});
  }
  return out;
}

int demand_distinct_count(const DemandVector& d) { return d.distinct_count(); }

LeaderPermutation choose_leaders(const DemandVector& d) {
  LeaderPermutation u;
  IndexSet seen;
  for (int k = 1; k <= d.n_users(); ++k) {
    if (!seen.contains(d.of(k))) {
      seen.insert(d.of(k));
      u.leaders.push_back(k);
    }
  }
  return u;
}

LeaderPermutation choose_leaders(const DemandVector& d, std::vector<int> explicit_order) {
  IndexSet files;
  IndexSet users;
  for (int k : explicit_order) {
    if (k < 1 || k > d.n_users()) throw ModelError("leader " + std::to_string(k) + " is not a user index");
    if (users.contains(k)) throw ModelError("leader " + std::to_string(k) + " listed twice");
    if (files.contains(d.of(k))) {
      throw ModelError("leaders must demand distinct files; file " + std::to_string(d.of(k)) + " has two leaders");
    }
    users.insert(k);
    files.insert(d.of(k));
  }
  if (files.size() != d.distinct_count()) {
    throw ModelError("leader permutation has " + std::to_string(files.size()) + " leaders but the demand has " +
                     std::to_string(d.distinct_count()) + " distinct files");
  }
  return LeaderPermutation{std::move(explicit_order), LeaderPolicy::kExplicit};
}

BigInt count_demands_with_s_distinct(int n_files, int n_users, int s) {
  if (s < 1 || s > std::min(n_files, n_users)) {
    throw ModelError("demand type s = " + std::to_string(s) + " outside [1, min{K,N}]");
  }
  // Surjections [K] -> [s] by inclusion-exclusion.
  BigInt surjections = 0;
  for (int i = 0; i <= s; ++i) {
    BigInt term = big_binomial(s, i) * boost::multiprecision::pow(BigInt(s - i), static_cast<unsigned>(n_users));
    if (i % 2 == 0) {
      surjections += term;
    } else {
      surjections -= term;
    }
  }
  return big_binomial(n_files, s) * surjections;
}

}  // namespace corrcache
