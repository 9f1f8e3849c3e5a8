#pragma once

// Candidates, rankings and anonymous voter profiles over a fixed left-to-right
// axis. Candidate i is the i-th candidate from the left.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spvote {

struct CandidateId {
  std::uint32_t index = 0;

  constexpr CandidateId() = default;
  constexpr explicit CandidateId(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(CandidateId, CandidateId) = default;
};

/// Letters A..Z when m <= 26, decimal indices otherwise.
inline std::string candidate_label(CandidateId c, std::size_t m) {
  if (m <= 26) return std::string(1, static_cast<char>('A' + c.index));
  return std::to_string(c.index);
}

/// A sorted set of candidates, e.g. a committee.
using Committee = std::vector<CandidateId>;

inline std::string committee_label(std::span<const CandidateId> members, std::size_t m) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (m > 26 && i > 0) out += '+';
    out += candidate_label(members[i], m);
  }
  return out;
}

/// Strict preference order, most preferred first.
class Ranking {
 public:
  Ranking() = default;

  explicit Ranking(std::vector<CandidateId> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (CandidateId c : order_) {
      if (c.index >= order_.size() || seen[c.index])
        throw std::invalid_argument("ranking is not a permutation of 0..m-1");
      seen[c.index] = true;
    }
  }

  static Ranking from_indices(std::initializer_list<std::uint32_t> indices) {
    std::vector<CandidateId> order;
    order.reserve(indices.size());
    for (auto i : indices) order.emplace_back(i);
    return Ranking(std::move(order));
  }

  std::size_t size() const noexcept { return order_.size(); }
  CandidateId operator[](std::size_t position) const { return order_[position]; }
  std::span<const CandidateId> order() const noexcept { return order_; }

  /// position()[c] is the 0-based rank of candidate c.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i].index] = i;
    return pos;
  }

  bool prefers(CandidateId a, CandidateId b) const {
    for (CandidateId c : order_) {
      if (c == a) return true;
      if (c == b) return false;
    }
    throw std::invalid_argument("candidate not in ranking");
  }

  friend auto operator<=>(const Ranking&, const Ranking&) = default;
  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<CandidateId> order_;
};

/// Every top-j prefix is a contiguous interval of the axis.
inline bool is_single_peaked(const Ranking& r) {
  if (r.size() == 0) return true;
  std::uint32_t lo = r[0].index;
  std::uint32_t hi = lo;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const std::uint32_t c = r[i].index;
    if (lo > 0 && c == lo - 1) {
      lo = c;
    } else if (c == hi + 1) {
      hi = c;
    } else {
      return false;
    }
  }
  return true;
}

/// All 2^(m-1) single-peaked rankings in lexicographic order.
inline std::vector<Ranking> enumerate_single_peaked_rankings(std::size_t m) {
  if (m == 0) throw std::invalid_argument("need at least one candidate");
  if (m > 30) throw std::invalid_argument("too many candidates to enumerate");

  std::vector<Ranking> out;
  out.reserve(std::size_t{1} << (m - 1));
  std::vector<CandidateId> order(m);
  // Each ranking is a peak followed by a sequence of left/right extensions.
  for (std::uint32_t peak = 0; peak < m; ++peak) {
    const std::uint32_t left_count = peak;
    // Choose which of the m-1 later positions take the next-left candidate.
    std::vector<bool> take_left(m - 1, false);
    std::fill(take_left.begin(), take_left.begin() + left_count, true);
    std::sort(take_left.begin(), take_left.end());
    do {
      order[0] = CandidateId(peak);
      std::uint32_t lo = peak, hi = peak;
      for (std::size_t i = 0; i + 1 < m; ++i)
        order[i + 1] = take_left[i] ? CandidateId(--lo) : CandidateId(++hi);
      out.emplace_back(order);
    } while (std::next_permutation(take_left.begin(), take_left.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Anonymous profile: ranking -> number of voters. Zero counts are dropped.
class Profile {
 public:
  using Count = std::uint64_t;
  using Entry = std::pair<Ranking, Count>;

  Profile() = default;

  Profile(std::size_t candidates, std::span<const Entry> entries) : m_(candidates) {
    for (const auto& [ranking, count] : entries) {
      if (ranking.size() != m_)
        throw std::invalid_argument("ranking length " + std::to_string(ranking.size()) +
                                    " does not match m=" + std::to_string(m_));
      if (count == 0) continue;
      counts_[ranking] += count;
      voters_ += count;
    }
    single_peaked_ = std::all_of(counts_.begin(), counts_.end(),
                                 [](const auto& kv) { return is_single_peaked(kv.first); });
  }

  std::size_t candidates() const noexcept { return m_; }
  Count voters() const noexcept { return voters_; }
  bool single_peaked() const noexcept { return single_peaked_; }

  /// Distinct rankings with positive counts, in lexicographic order.
  const std::map<Ranking, Count>& counts() const noexcept { return counts_; }

  Count count(const Ranking& r) const {
    auto it = counts_.find(r);
    return it == counts_.end() ? 0 : it->second;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.m_ == b.m_ && a.counts_ == b.counts_;
  }

 private:
  std::size_t m_ = 0;
  std::map<Ranking, Count> counts_;
  Count voters_ = 0;
  bool single_peaked_ = true;
};

inline Profile profile_from_counts(std::size_t m, std::span<const Profile::Entry> entries) {
  return Profile(m, entries);
}

inline Profile profile_from_counts(std::size_t m, std::initializer_list<Profile::Entry> entries) {
  return Profile(m, std::span<const Profile::Entry>(entries.begin(), entries.size()));
}

/// Throws unless the profile can be used in an election (N odd, hence N > 0).
inline void require_election_ready(const Profile& p) {
  if (p.voters() % 2 == 0)
    throw std::invalid_argument("election profiles need an odd number of voters, got " +
                                std::to_string(p.voters()));
}

/// Profile constructor for election use: rejects even N.
inline Profile election_profile(std::size_t m, std::span<const Profile::Entry> entries) {
  Profile p(m, entries);
  require_election_ready(p);
  return p;
}

/// Removes candidate c from every ballot; indices above c shift down by one.
inline Profile eliminate_candidate(const Profile& p, CandidateId c) {
  const std::size_t m = p.candidates();
  if (c.index >= m) throw std::invalid_argument("candidate out of range");

  std::vector<Profile::Entry> entries;
  entries.reserve(p.counts().size());
  std::vector<CandidateId> order;
  for (const auto& [ranking, count] : p.counts()) {
    order.clear();
    for (CandidateId d : ranking.order()) {
      if (d == c) continue;
      order.emplace_back(d.index > c.index ? d.index - 1 : d.index);
    }
    entries.emplace_back(Ranking(order), count);
  }
  Profile out(m - 1, entries);
  if (p.single_peaked() && !out.single_peaked())
    throw std::logic_error("elimination broke single-peakedness");
  return out;
}

}  // namespace spvote
