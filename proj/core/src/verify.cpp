#include "corrcache/verify.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "corrcache/bounds.hpp"

namespace corrcache {

namespace {

constexpr std::size_t kMaxRecordedFailures = 8;

BitVector row_vector(const SubBlockUniverse& universe, const std::vector<SubBlockId>& terms) {
  BitVector v(universe.size());
  for (const SubBlockId& id : terms) {
    const auto col = universe.index_of(id);
    if (!col) throw UniverseError("combination term " + id.to_string() + " is not in the sub-block universe");
    // Repeated terms cancel over GF(2).
    v.flip(*col);
  }
  return v;
}

std::vector<std::vector<SubBlockId>> rows_of(const Transmission& tx) {
  std::vector<std::vector<SubBlockId>> rows;
  rows.reserve(tx.combinations.size());
  for (const auto& c : tx.combinations) rows.push_back(c.terms);
  return rows;
}

}  // namespace

Gf2Matrix user_knowledge_matrix(int user, const SubBlockUniverse& universe, const CacheAssignment& cache,
                                const std::vector<std::vector<SubBlockId>>& rows) {
  Gf2Matrix m(universe.size());
  for (const SubBlockId& id : cache.of(user)) {
    const auto col = universe.index_of(id);
    if (!col) throw UniverseError("cached sub-block " + id.to_string() + " is not in the sub-block universe");
    m.insert_unit(*col);
  }
  for (const auto& terms : rows) m.insert(row_vector(universe, terms));
  return m;
}

Gf2Matrix user_knowledge_matrix(int user, const SubBlockUniverse& universe, const CacheAssignment& cache,
                                const Transmission& tx) {
  return user_knowledge_matrix(user, universe, cache, rows_of(tx));
}

DecodeReport decode_check_sets(const SubBlockUniverse& universe, const std::vector<IndexSet>& wanted_files,
                               const CacheAssignment& cache, const std::vector<std::vector<SubBlockId>>& rows) {
  DecodeReport report;
  // Rows are validated once up front so every user sees the same error.
  std::vector<BitVector> vectors;
  vectors.reserve(rows.size());
  for (const auto& terms : rows) vectors.push_back(row_vector(universe, terms));

  for (std::size_t k = 0; k < wanted_files.size(); ++k) {
    const int user = static_cast<int>(k) + 1;
    Gf2Matrix m(universe.size());
    for (const SubBlockId& id : cache.of(user)) {
      const auto col = universe.index_of(id);
      if (!col) throw UniverseError("cached sub-block " + id.to_string() + " is not in the sub-block universe");
      m.insert_unit(*col);
    }
    for (const BitVector& v : vectors) m.insert(v);

    UserDecode entry;
    entry.user = user;
    for (std::size_t col = 0; col < universe.size(); ++col) {
      const SubBlockId& id = universe.at(col);
      if (!id.block.files.intersects(wanted_files[k])) continue;
      entry.desired.push_back(id);
      if (m.spans_unit(col)) {
        entry.recovered.push_back(id);
      } else {
        entry.missing.push_back(id);
      }
    }
    if (!entry.missing.empty()) report.all_decodable = false;
    report.per_user.push_back(std::move(entry));
  }
  return report;
}

DecodeReport decode_check(const ProblemInstance& inst, const DemandVector& d, const CacheAssignment& cache,
                          const Transmission& tx) {
  const SubBlockUniverse universe(inst);
  std::vector<IndexSet> wanted;
  wanted.reserve(static_cast<std::size_t>(d.n_users()));
  for (int k = 1; k <= d.n_users(); ++k) wanted.push_back(IndexSet{d.of(k)});
  return decode_check_sets(universe, wanted, cache, rows_of(tx));
}

Rational measured_load(const ProblemInstance& inst, const Transmission& tx) {
  return Rational(tx.combinations.size(), inst.subblocks_per_file());
}

VerificationResult verify_demand(const ProblemInstance& inst, const DemandVector& d,
                                 const std::optional<LeaderPermutation>& leaders) {
  VerificationResult result;
  result.leaders = leaders ? *leaders : choose_leaders(d);
  const CacheAssignment cache = man_placement(inst);
  const Transmission tx = build_delivery(inst, d, result.leaders);
  result.report = decode_check(inst, d, cache, tx);
  result.decodable = result.report.all_decodable;
  result.load = measured_load(inst, tx);
  result.matches_coefficient =
      result.load == load_coefficient(inst.n_files, inst.n_users, inst.overlap, inst.t_int(), d.distinct_count());
  return result;
}

OptimalityCases classify(int n_files, int n_users, int overlap, int t, const DemandVector& d) {
  OptimalityCases c;
  c.distinct_demands = n_files >= n_users && d.distinct_count() == n_users;
  c.overlap_extreme = overlap == 1 || overlap == 2 || overlap == n_files - 1 || overlap == n_files;
  c.memory_extreme = t <= 2 || t >= n_users - 1;
  return c;
}

bool SweepReport::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.passed(); });
}

SweepCell verify_cell(int n_files, int n_users, int overlap, int t, DemandFilter filter) {
  const ProblemInstance inst = instance_at_corner(n_files, n_users, overlap, t);
  const SubBlockUniverse universe(inst);
  const CacheAssignment cache = man_placement(inst);

  SweepCell cell;
  cell.n_files = n_files;
  cell.n_users = n_users;
  cell.overlap = overlap;
  cell.t = t;
  cell.memory = inst.memory;
  cell.worst_expected = load_coefficient(n_files, n_users, overlap, t, std::min(n_files, n_users));
  bool any_worst_type = false;

  for_each_demand(n_files, n_users, [&](const DemandVector& d) {
    const OptimalityCases cases = classify(n_files, n_users, overlap, t, d);
    const bool must_pass = cases.any();
    if (filter == DemandFilter::kMustPass && !must_pass) return;
    if (filter == DemandFilter::kDistinct && d.distinct_count() != n_users) return;

    const LeaderPermutation u = choose_leaders(d);
    const Transmission tx = build_delivery(inst, d, u);
    std::vector<IndexSet> wanted;
    for (int k = 1; k <= n_users; ++k) wanted.push_back(IndexSet{d.of(k)});
    std::vector<std::vector<SubBlockId>> rows;
    rows.reserve(tx.combinations.size());
    for (const auto& c : tx.combinations) rows.push_back(c.terms);
    const DecodeReport report = decode_check_sets(universe, wanted, cache, rows);
    const Rational load = measured_load(inst, tx);
    const bool load_ok = load == load_coefficient(n_files, n_users, overlap, t, d.distinct_count());
    const bool ok = report.all_decodable && load_ok;

    ++cell.demands_checked;
    cell.load_sum += load;
    if (must_pass) {
      ++cell.must_pass;
      if (!ok) ++cell.must_pass_failures;
      if (load > cell.worst_load) cell.worst_load = load;
      if (d.distinct_count() == std::min(n_files, n_users)) any_worst_type = true;
    } else if (!ok) {
      ++cell.other_failures;
    }
    if (!ok && cell.failures.size() < kMaxRecordedFailures) {
      cell.failures.push_back(SweepFailure{d, must_pass, report.all_decodable, load});
    }
  });
  if (cell.must_pass > 0 && any_worst_type) cell.worst_case_ok = cell.worst_load == cell.worst_expected;
  return cell;
}

SweepReport sweep_verify(const SweepGrid& grid, DemandFilter filter, unsigned threads) {
  struct Job {
    int n, k, r, t;
  };
  std::vector<Job> jobs;
  for (int n = grid.n_min; n <= grid.n_max; ++n) {
    for (int k = grid.k_min; k <= grid.k_max; ++k) {
      for (int r = 1; r <= n; ++r) {
        if (!grid.overlaps.empty() && std::find(grid.overlaps.begin(), grid.overlaps.end(), r) == grid.overlaps.end()) {
          continue;
        }
        for (int t = 0; t <= k; ++t) {
          if (!grid.ts.empty() && std::find(grid.ts.begin(), grid.ts.end(), t) == grid.ts.end()) continue;
          jobs.push_back(Job{n, k, r, t});
        }
      }
    }
  }

  SweepReport report;
  report.cells.resize(jobs.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      report.cells[i] = verify_cell(j.n, j.k, j.r, j.t, filter);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const SweepCell& c : report.cells) {
    report.total_must_pass += c.must_pass;
    report.total_must_pass_failures += c.must_pass_failures;
  }
  return report;
}

}  // namespace corrcache
