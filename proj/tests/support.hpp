#pragma once

// Test-only helpers: an independent random single-peaked profile generator and
// brute-force recomputations over expanded voter lists.

#include <random>
#include <vector>

#include "spvote/elections.hpp"
#include "spvote/profiles.hpp"

namespace spvote::testkit {

/// Random single-peaked ranking: pick a peak, then grow the interval left or
/// right by coin flips.
inline Ranking random_sp_ranking(std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> peak_dist(0, static_cast<std::uint32_t>(m - 1));
  std::bernoulli_distribution coin(0.5);
  std::int64_t lo = peak_dist(rng), hi = lo;
  std::vector<CandidateId> order{CandidateId(static_cast<std::uint32_t>(lo))};
  while (order.size() < m) {
    const bool can_left = lo > 0, can_right = hi + 1 < static_cast<std::int64_t>(m);
    if (can_left && (!can_right || coin(rng)))
      order.emplace_back(static_cast<std::uint32_t>(--lo));
    else
      order.emplace_back(static_cast<std::uint32_t>(++hi));
  }
  return Ranking(order);
}

/// Random permutation, not necessarily single-peaked.
inline Ranking random_ranking(std::size_t m, std::mt19937_64& rng) {
  std::vector<CandidateId> order;
  for (std::uint32_t i = 0; i < m; ++i) order.emplace_back(i);
  std::shuffle(order.begin(), order.end(), rng);
  return Ranking(order);
}

/// Single-peaked profile with odd N in [1, max_voters], spread over a random
/// number of ballot types.
inline Profile random_sp_profile(std::size_t m, std::uint64_t max_voters, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> n_dist(0, (max_voters - 1) / 2);
  const std::uint64_t n = 2 * n_dist(rng) + 1;
  std::uniform_int_distribution<int> types_dist(1, 8);
  const int types = types_dist(rng);
  std::vector<Ranking> pool;
  for (int i = 0; i < types; ++i) pool.push_back(random_sp_ranking(m, rng));
  std::vector<Profile::Entry> entries;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::uint64_t v = 0; v < n; ++v) entries.emplace_back(pool[pick(rng)], 1);
  return profile_from_counts(m, entries);
}

inline std::vector<Ranking> expand(const Profile& p) {
  std::vector<Ranking> voters;
  for (const auto& [r, c] : p.counts())
    for (std::uint64_t i = 0; i < c; ++i) voters.push_back(r);
  return voters;
}

inline Committee make_committee(std::initializer_list<std::uint32_t> idx) {
  Committee w;
  for (auto i : idx) w.emplace_back(i);
  return w;
}

inline Committee letters(const std::string& s) {
  Committee w;
  for (char ch : s) w.emplace_back(static_cast<std::uint32_t>(ch - 'A'));
  std::sort(w.begin(), w.end());
  return w;
}

inline Ranking ranking_of(const std::string& s) {
  std::vector<CandidateId> order;
  for (char ch : s)
    if (ch != ' ') order.emplace_back(static_cast<std::uint32_t>(ch - 'A'));
  return Ranking(order);
}

}  // namespace spvote::testkit
