#include <random>

#include "corrcache/bounds.hpp"
#include "corrcache/verify.hpp"
#include "decode_oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corrcache;

namespace {

using Rows = std::vector<std::vector<SubBlockId>>;

oracle::Dense dense(const BitVector& v) {
  oracle::Dense out(v.width(), 0);
  for (std::size_t i = 0; i < v.width(); ++i) out[i] = v.get(i) ? 1 : 0;
  return out;
}

BitVector random_vector(std::mt19937& rng, std::size_t width, double density) {
  std::bernoulli_distribution bit(density);
  BitVector v(width);
  for (std::size_t i = 0; i < width; ++i) {
    if (bit(rng)) v.set(i);
  }
  return v;
}

Rows rows_of(const Transmission& tx) {
  Rows out;
  for (const auto& c : tx.combinations) out.push_back(c.terms);
  return out;
}

}  // namespace

TEST_CASE("bit vectors") {
  BitVector v(130);
  CHECK(v.none());
  v.set(0);
  v.set(64);
  v.set(129);
  CHECK(v.count() == 3);
  CHECK(v.lowest_set() == 0);
  CHECK(v.lowest_set(1) == 64);
  v.flip(0);
  CHECK(v.lowest_set() == 64);
  BitVector w = v;
  w ^= v;
  CHECK(w.none());
  CHECK(w.lowest_set() == 130);
  CHECK(BitVector::unit(70, 69).get(69));
}

TEST_CASE("GF(2) span matches exhaustive XOR enumeration") {
  std::mt19937 rng(20261017);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t width = 1 + rng() % 80;
    const std::size_t rows = rng() % 13;
    const double density = trial % 3 == 0 ? 0.1 : 0.4;
    Gf2Matrix m(width);
    std::vector<oracle::Dense> plain;
    for (std::size_t i = 0; i < rows; ++i) {
      const BitVector r = random_vector(rng, width, density);
      plain.push_back(dense(r));
      m.insert(r);
    }
    const auto span = oracle::brute_span(plain, width);
    // |span| = 2^rank
    CHECK(span.size() == (std::size_t{1} << m.rank()));
    for (std::size_t c = 0; c < width; ++c) CHECK(m.spans_unit(c) == (span.count(oracle::unit(width, c)) == 1));
    for (const auto& member : span) {
      BitVector v(width);
      for (std::size_t i = 0; i < width; ++i) {
        if (member[i]) v.set(i);
      }
      CHECK(m.in_span(v));
    }
    for (int probe = 0; probe < 20; ++probe) {
      const BitVector v = random_vector(rng, width, 0.5);
      CHECK(m.in_span(v) == (span.count(dense(v)) == 1));
    }
  }
}

TEST_CASE("insert reports rank growth") {
  Gf2Matrix m(4);
  BitVector a(4), b(4);
  a.set(0);
  a.set(1);
  b.set(1);
  b.set(2);
  CHECK(m.insert(a));
  CHECK(m.insert(b));
  BitVector c = a;
  c ^= b;
  CHECK_FALSE(m.insert(c));
  CHECK(m.rank() == 2);
  CHECK(m.insert_unit(3));
  CHECK_FALSE(m.spans_unit(0));
  CHECK(m.insert_unit(2));
  CHECK(m.spans_unit(0));
  CHECK(m.rank() == 4);
}

TEST_CASE("worked example decodes for every user") {
  const auto inst = new_instance(3, 5, Rational(3, 5), 2);
  const DemandVector d{{1, 2, 3, 1, 2}};
  const auto result = verify_demand(inst, d);
  CHECK(result.decodable);
  CHECK(result.load == Rational(3, 4));
  CHECK(result.matches_coefficient);
  CHECK(result.leaders.leaders == std::vector<int>{1, 2, 3});
  REQUIRE(result.report.per_user.size() == 5);
  for (const auto& u : result.report.per_user) {
    CHECK(u.desired.size() == 20);
    CHECK(u.recovered.size() == 20);
    CHECK(u.missing.empty());
  }

  const SubBlockUniverse universe(inst);
  const auto cache = man_placement(inst);
  const auto tx = build_delivery(inst, d, result.leaders);
  const auto m1 = user_knowledge_matrix(1, universe, cache, tx);
  CHECK(m1.rank() == 12 + 15);
  const oracle::DenseDecoder dense_check(3, 5, 2, 2);
  CHECK(dense_check.all_decode(d.demands, rows_of(tx)));
}

TEST_CASE("dropping any combination breaks decoding") {
  const auto inst = new_instance(3, 5, Rational(3, 5), 2);
  const DemandVector d{{1, 2, 3, 1, 2}};
  const auto cache = man_placement(inst);
  const auto full = build_delivery(inst, d, choose_leaders(d));
  for (std::size_t drop = 0; drop < full.combinations.size(); ++drop) {
    Transmission cut = full;
    cut.combinations.erase(cut.combinations.begin() + static_cast<long>(drop));
    const auto report = decode_check(inst, d, cache, cut);
    CHECK_FALSE(report.all_decodable);
    std::size_t missing = 0;
    for (const auto& u : report.per_user) missing += u.missing.size();
    CHECK(missing >= 1);
  }
}

TEST_CASE("adding combinations never shrinks recovered sets") {
  const auto inst = new_instance(3, 5, Rational(3, 5), 2);
  const DemandVector d{{1, 2, 3, 1, 2}};
  const auto cache = man_placement(inst);
  const auto full = build_delivery(inst, d, choose_leaders(d));
  Transmission partial = full;
  partial.combinations.clear();
  std::vector<std::size_t> previous(5, 0);
  for (const auto& c : full.combinations) {
    partial.combinations.push_back(c);
    const auto report = decode_check(inst, d, cache, partial);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(report.per_user[k].recovered.size() >= previous[k]);
      previous[k] = report.per_user[k].recovered.size();
    }
  }
}

TEST_CASE("decode report agrees with exhaustive XOR search on small systems") {
  // Every instance here has at most 12 rows, so 2^rows subsets are enumerable.
  std::size_t systems = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t <= k; ++t) {
          const auto inst = instance_at_corner(n, k, r, t);
          const SubBlockUniverse universe(inst);
          const auto cache = man_placement(inst);
          for (const auto& dv : oracle::all_demands(n, k)) {
            const DemandVector d{dv};
            const auto tx = build_delivery(inst, d, choose_leaders(d));
            if (tx.combinations.size() > 12) continue;
            ++systems;
            const auto report = decode_check(inst, d, cache, tx);
            const std::size_t width = universe.size();
            std::vector<oracle::Dense> rows;
            for (const auto& c : tx.combinations) {
              oracle::Dense v(width, 0);
              for (const auto& term : c.terms) v[*universe.index_of(term)] ^= 1;
              rows.push_back(std::move(v));
            }
            const auto span = oracle::brute_span(rows, width);
            for (int user = 1; user <= k; ++user) {
              // Cached coordinates can be cancelled freely, so project them out.
              std::set<oracle::Dense> projected;
              for (auto v : span) {
                for (const auto& id : cache.of(user)) v[*universe.index_of(id)] = 0;
                projected.insert(std::move(v));
              }
              std::size_t expected = 0;
              for (std::size_t c = 0; c < width; ++c) {
                const auto& id = universe.at(c);
                if (!id.block.files.contains(d.of(user))) continue;
                const bool cached = id.cached_by.contains(user);
                if (cached || projected.count(oracle::unit(width, c)) == 1) ++expected;
              }
              CHECK(report.per_user[static_cast<std::size_t>(user - 1)].recovered.size() == expected);
            }
          }
        }
      }
    }
  }
  CHECK(systems > 200);
}

TEST_CASE("decode report agrees with dense elimination") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t <= k; ++t) {
          const auto inst = instance_at_corner(n, k, r, t);
          const oracle::DenseDecoder dense_check(n, k, r, t);
          for (const auto& dv : oracle::all_demands(n, k)) {
            const DemandVector d{dv};
            const auto result = verify_demand(inst, d);
            const auto tx = build_delivery(inst, d, result.leaders);
            CHECK(result.decodable == dense_check.all_decode(dv, rows_of(tx)));
          }
        }
      }
    }
  }
}

TEST_CASE("corners decode") {
  const auto full = instance_at_corner(3, 4, 2, 4);
  const auto r = verify_demand(full, DemandVector{{1, 2, 3, 3}});
  CHECK(r.decodable);
  CHECK(r.load == 0);
  CHECK(r.matches_coefficient);

  const auto none = instance_at_corner(3, 4, 2, 0);
  const auto r0 = verify_demand(none, DemandVector{{1, 2, 3, 3}});
  CHECK(r0.decodable);
  CHECK(r0.load == load_coefficient(3, 4, 2, 0, 3));

  Transmission empty;
  CHECK(measured_load(full, empty) == 0);
}

TEST_CASE("unknown sub-blocks are rejected") {
  const auto inst = instance_at_corner(3, 3, 2, 1);
  const SubBlockUniverse universe(inst);
  const auto cache = man_placement(inst);
  const std::vector<std::vector<SubBlockId>> bad{{SubBlockId{BlockId{IndexSet{1}}, IndexSet{1}}}};
  CHECK_THROWS_AS(decode_check_sets(universe, {IndexSet{1}, IndexSet{2}, IndexSet{3}}, cache, bad), UniverseError);
}

TEST_CASE("optimality case classification") {
  CHECK(classify(3, 5, 2, 2, DemandVector{{1, 2, 3, 1, 2}}).memory_extreme);
  const auto distinct = classify(5, 3, 3, 0, DemandVector{{1, 2, 3}});
  CHECK(distinct.distinct_demands);
  CHECK_FALSE(classify(5, 3, 3, 1, DemandVector{{1, 1, 3}}).distinct_demands);
  CHECK(classify(5, 5, 4, 3, DemandVector{{1, 1, 2, 2, 3}}).overlap_extreme);
  const auto outside = classify(5, 5, 3, 3, DemandVector{{1, 1, 2, 2, 3}});
  CHECK_FALSE(outside.any());
  CHECK(classify(5, 5, 3, 3, DemandVector{{1, 2, 3, 4, 5}}).any());
}

TEST_CASE("small sweep") {
  SweepGrid grid;
  grid.n_max = 3;
  grid.k_max = 3;
  const auto report = sweep_verify(grid, DemandFilter::kAll, 2);
  CHECK(report.passed());
  CHECK(report.total_must_pass_failures == 0);
  std::size_t cells = 0;
  for (int n = 1; n <= 3; ++n) cells += static_cast<std::size_t>(n) * (2 + 3 + 4);
  CHECK(report.cells.size() == cells);
  for (const auto& c : report.cells) {
    if (c.t == c.n_users) CHECK(c.worst_load == 0);
    if (c.must_pass > 0) CHECK(c.worst_case_ok);
  }
  // Order is independent of the worker count.
  const auto serial = sweep_verify(grid, DemandFilter::kAll, 1);
  REQUIRE(serial.cells.size() == report.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].t == report.cells[i].t);
    CHECK(serial.cells[i].load_sum == report.cells[i].load_sum);
  }
}
