#include <algorithm>
#include <numeric>
#include <random>

#include "corrcache/bounds.hpp"
#include "corrcache/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corrcache;

namespace {

using Rows = std::vector<std::vector<SubBlockId>>;

IndexSet map_set(IndexSet s, const std::vector<int>& perm) {
  IndexSet out;
  for (int i : s.elements()) out.insert(perm[static_cast<std::size_t>(i - 1)]);
  return out;
}

Rows relabel(const Rows& rows, const std::vector<int>& files, const std::vector<int>& users) {
  Rows out;
  for (const auto& r : rows) {
    std::vector<SubBlockId> terms;
    for (const auto& id : r) terms.push_back(SubBlockId{BlockId{map_set(id.block.files, files)}, map_set(id.cached_by, users)});
    std::sort(terms.begin(), terms.end());
    out.push_back(std::move(terms));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  return p;
}

}  // namespace

TEST_CASE("coefficient monotone in t and s, zero at t = K") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 8; ++k) {
      for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= std::min(n, k); ++s) {
          CHECK(load_coefficient(n, k, r, k, s) == 0);
          for (int t = 0; t <= k; ++t) {
            if (t > 0) CHECK(load_coefficient(n, k, r, t, s) <= load_coefficient(n, k, r, t - 1, s));
            if (s > 1) CHECK(load_coefficient(n, k, r, t, s) >= load_coefficient(n, k, r, t, s - 1));
          }
        }
      }
    }
  }
}

TEST_CASE("single-overlap libraries follow the hockey-stick closed form") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 8; ++k) {
      for (int t = 0; t <= k; ++t) {
        for (int s = 1; s <= std::min(n, k); ++s) {
          const int m = std::min(s, k - t);
          const Rational closed = Rational(oracle::pascal(k, t + 1) - oracle::pascal(k - m, t + 1)) / Rational(oracle::pascal(k, t));
          CHECK(load_coefficient(n, k, 1, t, s) == closed);
        }
      }
    }
  }
}

TEST_CASE("relabeling files and users maps the delivery onto itself") {
  std::mt19937 rng(17);
  int cases = 0;
  while (cases < 20) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int k = 2 + static_cast<int>(rng() % 3);
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const int t = static_cast<int>(rng() % static_cast<unsigned>(k + 1));
    std::vector<int> dv(static_cast<std::size_t>(k));
    for (auto& x : dv) x = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    auto files = identity(n);
    auto users = identity(k);
    std::shuffle(files.begin(), files.end(), rng);
    std::shuffle(users.begin(), users.end(), rng);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(r);
    CAPTURE(t);

    const auto inst = instance_at_corner(n, k, r, t);
    const DemandVector d{dv};
    const auto u = choose_leaders(d);

    // User k asks for file d_k  ->  user users[k] asks for file files[d_k].
    std::vector<int> mapped(static_cast<std::size_t>(k));
    for (int user = 1; user <= k; ++user) {
      mapped[static_cast<std::size_t>(users[static_cast<std::size_t>(user - 1)] - 1)] = files[static_cast<std::size_t>(d.of(user) - 1)];
    }
    const DemandVector d2{mapped};
    std::vector<int> leaders2;
    for (int l : u.leaders) leaders2.push_back(users[static_cast<std::size_t>(l - 1)]);
    const auto u2 = choose_leaders(d2, leaders2);

    const auto tx = build_delivery(inst, d, u);
    const auto tx2 = build_delivery(inst, d2, u2);
    CHECK(canonical_rows(tx2) == relabel(canonical_rows(tx), files, users));
    const auto v1 = verify_demand(inst, d, u);
    const auto v2 = verify_demand(inst, d2, u2);
    CHECK(v1.load == v2.load);
    CHECK(v1.decodable == v2.decodable);
    ++cases;
  }
}

TEST_CASE("load does not depend on the leader order") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t <= k; ++t) {
          const auto inst = instance_at_corner(n, k, r, t);
          for (const auto& dv : oracle::all_demands(n, k)) {
            const DemandVector d{dv};
            const Rational expected = load_coefficient(n, k, r, t, oracle::distinct(dv));
            // Every choice of representative per file, in every order.
            std::vector<std::vector<int>> holders(static_cast<std::size_t>(n + 1));
            for (int user = 1; user <= k; ++user) holders[static_cast<std::size_t>(d.of(user))].push_back(user);
            std::vector<std::vector<int>> choices{{}};
            for (const auto& h : holders) {
              if (h.empty()) continue;
              std::vector<std::vector<int>> next;
              for (const auto& c : choices) {
                for (int user : h) {
                  auto e = c;
                  e.push_back(user);
                  next.push_back(std::move(e));
                }
              }
              choices = std::move(next);
            }
            for (auto leaders : choices) {
              std::sort(leaders.begin(), leaders.end());
              do {
                const auto tx = build_delivery(inst, d, choose_leaders(d, leaders));
                CHECK(measured_load(inst, tx) == expected);
              } while (std::next_permutation(leaders.begin(), leaders.end()));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("every leader order decodes on small must-pass instances") {
  for (int n = 2; n <= 3; ++n) {
    for (int k = 2; k <= 4; ++k) {
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t <= k; ++t) {
          const auto inst = instance_at_corner(n, k, r, t);
          for (const auto& dv : oracle::all_demands(n, k)) {
            const DemandVector d{dv};
            if (!classify(n, k, r, t, d).any()) continue;
            auto leaders = choose_leaders(d).leaders;
            std::sort(leaders.begin(), leaders.end());
            do {
              CHECK(verify_demand(inst, d, choose_leaders(d, leaders)).decodable);
            } while (std::next_permutation(leaders.begin(), leaders.end()));
          }
        }
      }
    }
  }
}
