#include "corrcache/bounds.hpp"

#include <algorithm>

namespace corrcache {

std::string LoadPoint::type_label() const { return demand_type ? std::to_string(*demand_type) : "avg"; }

namespace {

void require_corner(int n_files, int n_users, int overlap, int t) {
  if (n_files < 1 || n_users < 1) throw ModelError("N and K must be positive");
  if (overlap < 1 || overlap > n_files) throw ModelError("r must be in [1, N]");
  if (t < 0 || t > n_users) throw ModelError("t = " + std::to_string(t) + " outside [0, K]");
}

// Cross product sign of (b - a) x (c - a); > 0 means a left turn.
Rational cross(const LoadPoint& a, const LoadPoint& b, const LoadPoint& c) {
  return (b.memory - a.memory) * (c.load - a.load) - (b.load - a.load) * (c.memory - a.memory);
}

}  // namespace

Rational load_coefficient(int n_files, int n_users, int overlap, int t, int s) {
  require_corner(n_files, n_users, overlap, t);
  if (s < 1 || s > std::min(n_users, n_files)) {
    throw ModelError("demand type s = " + std::to_string(s) + " outside [1, min{K,N}]");
  }
  const int steps = std::min({n_files - overlap + 1, n_users - t, s});
  BigInt numerator = 0;
  for (int j = 1; j <= steps; ++j) numerator += big_binomial(n_files - j, overlap - 1) * big_binomial(n_users - j, t);
  return Rational(numerator, big_binomial(n_files - 1, overlap - 1) * big_binomial(n_users, t));
}

Rational average_coefficient(int n_files, int n_users, int overlap, int t) {
  require_corner(n_files, n_users, overlap, t);
  Rational total = 0;
  for (int s = 1; s <= std::min(n_files, n_users); ++s) {
    total += Rational(count_demands_with_s_distinct(n_files, n_users, s)) *
             load_coefficient(n_files, n_users, overlap, t, s);
  }
  return total / Rational(boost::multiprecision::pow(BigInt(n_files), static_cast<unsigned>(n_users)));
}

Rational corner_memory(int n_files, int n_users, int overlap, int t) {
  return Rational(n_files * t, n_users * overlap);
}

std::vector<LoadPoint> lower_convex_hull(std::vector<LoadPoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const LoadPoint& a, const LoadPoint& b) {
    if (a.memory != b.memory) return a.memory < b.memory;
    return a.load < b.load;
  });
  std::vector<LoadPoint> hull;
  for (auto& p : points) {
    if (!hull.empty() && hull.back().memory == p.memory) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(std::move(p));
  }
  return hull;
}

Envelope converse_envelope_type(int n_files, int n_users, int overlap, int s) {
  Envelope env;
  for (int t = 0; t <= n_users; ++t) {
    env.points.push_back(LoadPoint{corner_memory(n_files, n_users, overlap, t),
                                   load_coefficient(n_files, n_users, overlap, t, s), t, s});
  }
  env.hull = lower_convex_hull(env.points);
  return env;
}

Envelope converse_envelope_average(int n_files, int n_users, int overlap) {
  Envelope env;
  for (int t = 0; t <= n_users; ++t) {
    env.points.push_back(LoadPoint{corner_memory(n_files, n_users, overlap, t),
                                   average_coefficient(n_files, n_users, overlap, t), t, std::nullopt});
  }
  env.hull = lower_convex_hull(env.points);
  return env;
}

Rational envelope_eval(const Envelope& env, const Rational& memory) {
  if (env.hull.empty()) throw ModelError("empty envelope");
  if (memory < env.hull.front().memory || memory > env.hull.back().memory) {
    throw ModelError("M = " + to_string(memory) + " outside [" + to_string(env.hull.front().memory) + ", " +
                     to_string(env.hull.back().memory) + "]");
  }
  for (std::size_t i = 0; i < env.hull.size(); ++i) {
    const LoadPoint& right = env.hull[i];
    if (memory == right.memory) return right.load;
    if (memory < right.memory) {
      const LoadPoint& left = env.hull[i - 1];
      const Rational lambda = (memory - left.memory) / (right.memory - left.memory);
      return left.load + lambda * (right.load - left.load);
    }
  }
  return env.hull.back().load;
}

Rational baseline_round_division_load(const ProblemInstance& inst, const DemandVector& d) {
  const int t = inst.t_int();
  const int rounds = static_cast<int>(binomial(inst.n_files - 1, inst.overlap - 1));
  std::vector<std::vector<BlockId>> per_file(static_cast<std::size_t>(inst.n_files));
  for (int f = 1; f <= inst.n_files; ++f) per_file[static_cast<std::size_t>(f - 1)] = blocks_of_file(inst, f);

  const BigInt full = big_binomial(inst.n_users, t + 1);
  Rational block_units = 0;
  for (int round = 0; round < rounds; ++round) {
    std::vector<IndexSet> requested;
    for (int k = 1; k <= inst.n_users; ++k) {
      const BlockId& b = per_file[static_cast<std::size_t>(d.of(k) - 1)][static_cast<std::size_t>(round)];
      if (std::find(requested.begin(), requested.end(), b.files) == requested.end()) requested.push_back(b.files);
    }
    const int distinct = static_cast<int>(requested.size());
    block_units += Rational(full - big_binomial(inst.n_users - distinct, t + 1), big_binomial(inst.n_users, t));
  }
  return block_units / rounds;
}

}  // namespace corrcache
