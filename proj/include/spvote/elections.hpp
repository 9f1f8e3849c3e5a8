#pragma once

// Bloc and k-Copeland elections, head-to-head counts and the Condorcet ranking.
// All arithmetic is integer; "i beats j" means 2*T[i][j] > N.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spvote/profiles.hpp"

namespace spvote {

struct BlocTally {
  std::size_t k = 0;
  /// votes[c]: voters ranking c among their top k.
  std::vector<std::uint64_t> votes;
};

struct WinningSet {
  Committee members;  // sorted ascending
  /// True when the boundary tie group straddled the k-th place and was cut.
  bool tie_broken = false;
  /// Candidates sharing the k-th place value when tie_broken; empty otherwise.
  std::vector<CandidateId> tied_candidates;

  bool contains(CandidateId c) const {
    return std::binary_search(members.begin(), members.end(), c);
  }
};

namespace detail {

inline void check_winners(std::size_t m, std::size_t k) {
  if (k < 1 || k >= m)
    throw std::invalid_argument("number of winners k=" + std::to_string(k) + " must satisfy 1 <= k < m=" +
                                std::to_string(m));
}

/// Top k by value, ties broken toward the lower index.
template <typename Value>
WinningSet select_top(const std::vector<Value>& values, std::size_t k) {
  std::vector<CandidateId> order(values.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = CandidateId(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](CandidateId a, CandidateId b) { return values[a.index] > values[b.index]; });

  WinningSet w;
  w.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(w.members.begin(), w.members.end());

  const Value boundary = values[order[k - 1].index];
  if (values[order[k].index] == boundary) {
    w.tie_broken = true;
    for (std::uint32_t i = 0; i < values.size(); ++i)
      if (values[i] == boundary) w.tied_candidates.emplace_back(i);
  }
  return w;
}

}  // namespace detail

inline BlocTally bloc_tally(const Profile& p, std::size_t k) {
  detail::check_winners(p.candidates(), k);
  require_election_ready(p);
  BlocTally t{k, std::vector<std::uint64_t>(p.candidates(), 0)};
  for (const auto& [ranking, count] : p.counts())
    for (std::size_t pos = 0; pos < k; ++pos) t.votes[ranking[pos].index] += count;
  return t;
}

/// Bloc winners; ties at the k-th place go to the leftmost candidates.
inline WinningSet bloc_winners(const Profile& p, std::size_t k) {
  return detail::select_top(bloc_tally(p, k).votes, k);
}

class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  PairwiseMatrix(std::size_t m, std::uint64_t voters) : m_(m), voters_(voters), t_(m * m, 0) {}

  std::size_t candidates() const noexcept { return m_; }
  std::uint64_t voters() const noexcept { return voters_; }

  /// Voters preferring i to j.
  std::uint64_t operator()(CandidateId i, CandidateId j) const { return t_[i.index * m_ + j.index]; }
  std::uint64_t& at(CandidateId i, CandidateId j) { return t_[i.index * m_ + j.index]; }

  /// Strict majority: 2*T[i][j] > N.
  bool beats(CandidateId i, CandidateId j) const { return 2 * (*this)(i, j) > voters_; }

 private:
  std::size_t m_ = 0;
  std::uint64_t voters_ = 0;
  std::vector<std::uint64_t> t_;
};

inline PairwiseMatrix pairwise_matrix(const Profile& p) {
  const std::size_t m = p.candidates();
  PairwiseMatrix t(m, p.voters());
  for (const auto& [ranking, count] : p.counts()) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) t.at(ranking[a], ranking[b]) += count;
  }
  return t;
}

/// Copeland scores in half points: 2 per head-to-head win, 1 per tie.
struct CopelandScores {
  std::vector<std::uint32_t> half_points;

  double operator[](CandidateId c) const { return half_points[c.index] / 2.0; }
  std::size_t size() const noexcept { return half_points.size(); }
};

/// "2" or "2.5".
inline std::string format_copeland_score(std::uint32_t half_points) {
  return std::to_string(half_points / 2) + (half_points % 2 ? ".5" : "");
}

inline CopelandScores copeland_scores(const PairwiseMatrix& t) {
  const std::size_t m = t.candidates();
  CopelandScores s{std::vector<std::uint32_t>(m, 0)};
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto ij = t(CandidateId(i), CandidateId(j));
      const auto ji = t(CandidateId(j), CandidateId(i));
      if (ij > ji) s.half_points[i] += 2;
      else if (ij == ji) s.half_points[i] += 1;
    }
  return s;
}

/// Deterministic k-Copeland committee (leftmost tie-break, flagged).
inline WinningSet k_copeland_selection(const PairwiseMatrix& t, std::size_t k) {
  detail::check_winners(t.candidates(), k);
  return detail::select_top(copeland_scores(t).half_points, k);
}

/// Every committee consistent with the Copeland score order. Candidates scoring
/// above the k-th score always win; the remaining seats are filled in every
/// possible way from the group tied at the k-th score. Lexicographic order.
inline std::vector<WinningSet> k_copeland_winners(const PairwiseMatrix& t, std::size_t k) {
  detail::check_winners(t.candidates(), k);
  const auto scores = copeland_scores(t).half_points;
  const WinningSet base = detail::select_top(scores, k);
  if (!base.tie_broken) return {base};

  const std::uint32_t boundary = scores[base.tied_candidates.front().index];
  Committee sure;
  for (std::uint32_t i = 0; i < scores.size(); ++i)
    if (scores[i] > boundary) sure.emplace_back(i);
  const auto& group = base.tied_candidates;
  const std::size_t pick = k - sure.size();

  std::vector<WinningSet> out;
  std::vector<bool> chosen(group.size(), false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(pick), true);
  do {
    WinningSet w;
    w.members = sure;
    for (std::size_t g = 0; g < group.size(); ++g)
      if (chosen[g]) w.members.push_back(group[g]);
    std::sort(w.members.begin(), w.members.end());
    w.tie_broken = true;
    w.tied_candidates = group;
    out.push_back(std::move(w));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  std::sort(out.begin(), out.end(), [](const WinningSet& a, const WinningSet& b) { return a.members < b.members; });
  return out;
}

inline std::optional<CandidateId> condorcet_winner(const PairwiseMatrix& t) {
  const std::size_t m = t.candidates();
  for (std::uint32_t i = 0; i < m; ++i) {
    bool wins_all = true;
    for (std::uint32_t j = 0; j < m && wins_all; ++j)
      if (i != j && !t.beats(CandidateId(i), CandidateId(j))) wins_all = false;
    if (wins_all) return CandidateId(i);
  }
  return std::nullopt;
}

/// Condorcet ranking of a single-peaked profile by repeatedly taking the median
/// first-place candidate and eliminating it.
inline std::vector<CandidateId> median_elimination_ranking(const Profile& p) {
  require_election_ready(p);
  if (!p.single_peaked()) throw std::domain_error("median elimination requires a single-peaked profile");

  std::vector<CandidateId> original(p.candidates());
  for (std::uint32_t i = 0; i < original.size(); ++i) original[i] = CandidateId(i);

  std::vector<CandidateId> out;
  Profile current = p;
  const std::uint64_t median_pos = (p.voters() + 1) / 2;
  while (current.candidates() > 0) {
    std::vector<std::uint64_t> firsts(current.candidates(), 0);
    for (const auto& [ranking, count] : current.counts()) firsts[ranking[0].index] += count;
    std::uint64_t seen = 0;
    std::uint32_t median = 0;
    for (; median < firsts.size(); ++median) {
      seen += firsts[median];
      if (seen >= median_pos) break;
    }
    out.push_back(original[median]);
    original.erase(original.begin() + median);
    current = eliminate_candidate(current, CandidateId(median));
  }
  return out;
}

/// (k, c) pairs where c wins at committee size k but not at k+1.
inline std::vector<std::pair<std::size_t, CandidateId>> committee_monotonicity_violations(const Profile& p,
                                                                                        std::size_t max_k) {
  detail::check_winners(p.candidates(), max_k);
  std::vector<std::pair<std::size_t, CandidateId>> out;
  for (std::size_t k = 1; k <= max_k && k + 1 < p.candidates(); ++k) {
    const auto now = bloc_winners(p, k);
    const auto next = bloc_winners(p, k + 1);
    for (CandidateId c : now.members)
      if (!next.contains(c)) out.emplace_back(k, c);
  }
  return out;
}

}  // namespace spvote
