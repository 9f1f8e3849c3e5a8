#pragma once

// Random single-peaked profiles: impartial anonymous culture restricted to
// single-peaked rankings (IAC) and one-dimensional Euclidean spatial models
// with normal (EN) or bimodal (EB) voter ideal points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "spvote/profiles.hpp"

namespace spvote {

/// Per-trial generator. Streams are never shared between trials.
using RandomStream = std::mt19937_64;

struct RandomSource {
  std::uint64_t master_seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Stream for one trial: mt19937_64 seeded with
/// splitmix64(splitmix64(master_seed) ^ splitmix64(~trial_index)).
inline RandomStream derive_stream(const RandomSource& rs, std::uint64_t trial_index) {
  const std::uint64_t seed = detail::splitmix64(detail::splitmix64(rs.master_seed) ^ detail::splitmix64(~trial_index));
  return RandomStream(seed);
}

/// Uniform draw over all count vectors (x_1..x_r) with sum N, r = rankings.size(),
/// via stars and bars: r-1 distinct cut points in {1..N+r-1}.
inline Profile sample_iac(std::size_t m, const std::vector<Ranking>& rankings, std::uint64_t voters,
                          RandomStream& rng) {
  const std::uint64_t r = rankings.size();
  const std::uint64_t slots = voters + r - 1;
  const std::uint64_t cuts_needed = r - 1;

  // Floyd's algorithm: a uniform (r-1)-subset of {1..slots}.
  std::vector<std::uint64_t> cuts;
  cuts.reserve(cuts_needed);
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = slots - cuts_needed + 1; j <= slots; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(1, j);
    const std::uint64_t t = pick(rng);
    const std::uint64_t v = chosen.count(t) ? j : t;
    chosen.insert(v);
    cuts.push_back(v);
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<Profile::Entry> entries;
  entries.reserve(r);
  std::uint64_t prev = 0;
  for (std::uint64_t i = 0; i < r; ++i) {
    const std::uint64_t next = i < cuts_needed ? cuts[i] : slots + 1;
    entries.emplace_back(rankings[i], next - prev - 1);
    prev = next;
  }
  return Profile(m, entries);
}

inline Profile sample_iac_single_peaked(std::size_t m, std::uint64_t voters, RandomStream& rng) {
  if (m < 2) throw std::invalid_argument("IAC sampling needs at least 2 candidates");
  if (voters % 2 == 0) throw std::invalid_argument("IAC sampling needs an odd number of voters");
  return sample_iac(m, enumerate_single_peaked_rankings(m), voters, rng);
}

struct VoterDistribution {
  enum class Kind { normal, bimodal };

  Kind kind = Kind::normal;
  double mean = 0.0;         // normal: mean; bimodal: left mode
  double second_mean = 0.0;  // bimodal: right mode
  double stddev = 1.0;

  static VoterDistribution normal(double mean = 0.0, double stddev = 1.0) {
    return {Kind::normal, mean, mean, stddev};
  }
  /// Equal-weight mixture of two normals with a common standard deviation.
  static VoterDistribution bimodal(double left = -1.0, double right = 1.0, double stddev = 1.0) {
    return {Kind::bimodal, left, right, stddev};
  }

  double draw(RandomStream& rng) const {
    std::normal_distribution<double> z(0.0, stddev);
    if (kind == Kind::normal) return mean + z(rng);
    std::bernoulli_distribution right_mode(0.5);
    return (right_mode(rng) ? second_mean : mean) + z(rng);
  }
};

struct SpatialSpec {
  VoterDistribution distribution;
  std::uint64_t voters = 1001;
  std::size_t candidates = 5;

  void validate() const {
    if (!(distribution.stddev > 0.0) || !std::isfinite(distribution.stddev))
      throw std::invalid_argument("standard deviation must be positive");
    if (voters % 2 == 0) throw std::invalid_argument("spatial model needs an odd number of voters");
    if (candidates < 1 || candidates > voters)
      throw std::invalid_argument("need 1 <= candidates <= voters");
  }
};

struct SpatialSample {
  Profile profile;
  std::vector<double> candidate_positions;  // ascending; index = CandidateId
  std::vector<double> voter_positions;      // draw order
};

namespace detail {

/// Ranks candidates (sorted positions) by distance from x; equal distances go
/// to the lower index.
inline void rank_by_distance(double x, const std::vector<double>& cand, std::vector<CandidateId>& order) {
  // On a line the ranking grows outward from the nearest candidate.
  const auto m = static_cast<std::uint32_t>(cand.size());
  std::uint32_t hi = static_cast<std::uint32_t>(std::lower_bound(cand.begin(), cand.end(), x) - cand.begin());
  std::int64_t left = static_cast<std::int64_t>(hi) - 1;
  std::uint32_t right = hi;
  order.clear();
  while (order.size() < m) {
    const bool have_left = left >= 0;
    const bool have_right = right < m;
    bool take_left;
    if (have_left && have_right) {
      take_left = std::abs(x - cand[static_cast<std::size_t>(left)]) <= std::abs(cand[right] - x);
    } else {
      take_left = have_left;
    }
    if (take_left) {
      order.emplace_back(static_cast<std::uint32_t>(left--));
    } else {
      order.emplace_back(right++);
    }
  }
}

}  // namespace detail

inline SpatialSample sample_spatial(const SpatialSpec& spec, RandomStream& rng) {
  spec.validate();
  SpatialSample s;
  std::vector<double> distinct;
  for (int attempt = 0; attempt < 2; ++attempt) {
    s.voter_positions.resize(spec.voters);
    for (auto& x : s.voter_positions) x = spec.distribution.draw(rng);
    distinct = s.voter_positions;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= spec.candidates) break;
    if (attempt == 1) throw std::runtime_error("fewer distinct voter positions than candidates");
  }

  // m distinct positions without replacement (partial Fisher-Yates over indices).
  std::vector<std::size_t> idx(distinct.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < spec.candidates; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  s.candidate_positions.reserve(spec.candidates);
  for (std::size_t i = 0; i < spec.candidates; ++i) s.candidate_positions.push_back(distinct[idx[i]]);
  std::sort(s.candidate_positions.begin(), s.candidate_positions.end());

  // Voters in ascending position share rankings in long runs.
  std::vector<double> sorted_voters = s.voter_positions;
  std::sort(sorted_voters.begin(), sorted_voters.end());
  std::vector<Profile::Entry> entries;
  std::vector<CandidateId> order, previous;
  Profile::Count run = 0;
  for (double x : sorted_voters) {
    detail::rank_by_distance(x, s.candidate_positions, order);
    if (run > 0 && order == previous) {
      ++run;
      continue;
    }
    if (run > 0) entries.emplace_back(Ranking(previous), run);
    previous = order;
    run = 1;
  }
  if (run > 0) entries.emplace_back(Ranking(previous), run);

  s.profile = Profile(spec.candidates, entries);
  if (!s.profile.single_peaked()) throw std::logic_error("spatial profile is not single-peaked");
  return s;
}

/// Debug dump with columns voter_pos,candidate_pos (candidate column blank after m rows).
inline void write_positions_csv(std::ostream& out, const SpatialSample& s) {
  out << "voter_pos,candidate_pos\n";
  const std::size_t rows = std::max(s.voter_positions.size(), s.candidate_positions.size());
  out.precision(17);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < s.voter_positions.size()) out << s.voter_positions[i];
    out << ',';
    if (i < s.candidate_positions.size()) out << s.candidate_positions[i];
    out << '\n';
  }
}

}  // namespace spvote
