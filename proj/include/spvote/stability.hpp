#pragma once

// Committee classification: adjacency, Gehrlein stability, Condorcet sets and
// local stability under a quota.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spvote/elections.hpp"
#include "spvote/profiles.hpp"

namespace spvote {

class Quota {
 public:
  enum class Kind { majority, droop, custom };

  static Quota majority() { return Quota(Kind::majority, 0); }
  static Quota droop() { return Quota(Kind::droop, 0); }
  static Quota custom(std::uint64_t value) {
    if (value == 0) throw std::invalid_argument("quota must be at least 1");
    return Quota(Kind::custom, value);
  }

  Kind kind() const noexcept { return kind_; }

  /// majority: floor(N/2)+1; droop: floor(N/(k+1))+1.
  std::uint64_t value(std::uint64_t voters, std::size_t k) const {
    std::uint64_t q = 0;
    switch (kind_) {
      case Kind::majority: q = voters / 2 + 1; break;
      case Kind::droop: q = voters / (k + 1) + 1; break;
      case Kind::custom: q = custom_; break;
    }
    if (q < 1 || q > voters)
      throw std::invalid_argument("quota " + std::to_string(q) + " outside 1.." + std::to_string(voters));
    return q;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::majority: return "majority";
      case Kind::droop: return "droop";
      case Kind::custom: break;
    }
    return "q" + std::to_string(custom_);
  }

  friend bool operator==(const Quota&, const Quota&) = default;

 private:
  Quota(Kind kind, std::uint64_t custom) : kind_(kind), custom_(custom) {}

  Kind kind_;
  std::uint64_t custom_;
};

/// Parses "majority", "droop" or a positive integer.
inline Quota parse_quota(const std::string& text) {
  if (text == "majority") return Quota::majority();
  if (text == "droop") return Quota::droop();
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw std::invalid_argument("unknown quota '" + text + "'");
  return Quota::custom(v);
}

namespace detail {

inline Committee normalized_committee(std::span<const CandidateId> members, std::size_t m) {
  Committee w(members.begin(), members.end());
  std::sort(w.begin(), w.end());
  if (w.empty()) throw std::invalid_argument("committee is empty");
  if (std::adjacent_find(w.begin(), w.end()) != w.end()) throw std::invalid_argument("committee repeats a candidate");
  if (w.back().index >= m) throw std::invalid_argument("committee member outside the candidate range");
  return w;
}

inline std::vector<CandidateId> outsiders(const Committee& w, std::size_t m) {
  std::vector<CandidateId> out;
  for (std::uint32_t c = 0; c < m; ++c)
    if (!std::binary_search(w.begin(), w.end(), CandidateId(c))) out.emplace_back(c);
  return out;
}

}  // namespace detail

inline bool is_adjacent(std::span<const CandidateId> members) {
  if (members.empty()) return true;
  auto [lo, hi] = std::minmax_element(members.begin(), members.end());
  return hi->index - lo->index + 1 == members.size();
}

inline bool is_adjacent(const WinningSet& w) { return is_adjacent(w.members); }

struct GehrleinCheck {
  bool stable = true;
  /// Every (challenger, member) pair where the outsider beats the member.
  std::vector<std::pair<CandidateId, CandidateId>> violations;
};

/// Every member beats every non-member head to head.
inline GehrleinCheck is_gehrlein_stable(std::span<const CandidateId> members, const PairwiseMatrix& t) {
  const std::size_t m = t.candidates();
  const auto w = detail::normalized_committee(members, m);
  GehrleinCheck r;
  for (CandidateId c : detail::outsiders(w, m))
    for (CandidateId member : w)
      if (!t.beats(member, c)) r.violations.emplace_back(c, member);
  r.stable = r.violations.empty();
  return r;
}

struct CondorcetSetCheck {
  bool condorcet = true;
  /// Non-members beaten by no member.
  std::vector<CandidateId> uncovered;
};

/// Every non-member is beaten by at least one member.
inline CondorcetSetCheck is_condorcet_set(std::span<const CandidateId> members, const PairwiseMatrix& t) {
  const std::size_t m = t.candidates();
  const auto w = detail::normalized_committee(members, m);
  CondorcetSetCheck r;
  for (CandidateId c : detail::outsiders(w, m)) {
    const bool covered = std::any_of(w.begin(), w.end(), [&](CandidateId member) { return t.beats(member, c); });
    if (!covered) r.uncovered.push_back(c);
  }
  r.condorcet = r.uncovered.empty();
  return r;
}

/// Voters ranking c strictly above every member of the committee.
inline std::uint64_t block_size(const Profile& p, CandidateId c, std::span<const CandidateId> members) {
  const auto w = detail::normalized_committee(members, p.candidates());
  if (c.index >= p.candidates()) throw std::invalid_argument("candidate out of range");
  if (std::binary_search(w.begin(), w.end(), c)) throw std::invalid_argument("blocking candidate is a committee member");
  std::uint64_t total = 0;
  for (const auto& [ranking, count] : p.counts()) {
    for (CandidateId d : ranking.order()) {
      if (d == c) {
        total += count;
        break;
      }
      if (std::binary_search(w.begin(), w.end(), d)) break;
    }
  }
  return total;
}

struct LocalStabilityCheck {
  bool stable = true;
  std::uint64_t quota = 0;
  /// The outsider with the largest block (lowest index on ties), if any.
  std::optional<CandidateId> blocker;
  std::uint64_t block = 0;
};

/// No outsider is ranked above every member by quota-many voters or more.
inline LocalStabilityCheck is_locally_stable(const Profile& p, std::span<const CandidateId> members, const Quota& q) {
  require_election_ready(p);
  const auto w = detail::normalized_committee(members, p.candidates());
  LocalStabilityCheck r;
  r.quota = q.value(p.voters(), w.size());
  for (CandidateId c : detail::outsiders(w, p.candidates())) {
    const auto b = block_size(p, c, w);
    if (!r.blocker || b > r.block) {
      r.blocker = c;
      r.block = b;
    }
  }
  r.stable = !r.blocker || r.block < r.quota;
  return r;
}

struct StabilityReport {
  std::size_t candidates = 0;
  Committee members;
  bool adjacent = false;
  GehrleinCheck gehrlein;
  CondorcetSetCheck condorcet;
  std::optional<CandidateId> condorcet_winner;
  /// Set only when a Condorcet winner exists.
  std::optional<bool> contains_condorcet_winner;
  std::vector<std::pair<Quota, LocalStabilityCheck>> local;

  bool gehrlein_stable() const { return gehrlein.stable; }
  bool condorcet_set() const { return condorcet.condorcet; }

  std::optional<bool> locally_stable(const Quota& q) const {
    for (const auto& [quota, check] : local)
      if (quota == q) return check.stable;
    return std::nullopt;
  }
};

inline StabilityReport classify(const Profile& p, std::span<const CandidateId> members,
                                const std::vector<Quota>& quotas = {Quota::majority(), Quota::droop()}) {
  require_election_ready(p);
  const auto t = pairwise_matrix(p);
  StabilityReport r;
  r.candidates = p.candidates();
  r.members = detail::normalized_committee(members, p.candidates());
  r.adjacent = is_adjacent(r.members);
  r.gehrlein = is_gehrlein_stable(r.members, t);
  r.condorcet = is_condorcet_set(r.members, t);
  r.condorcet_winner = condorcet_winner(t);
  if (r.condorcet_winner)
    r.contains_condorcet_winner = std::binary_search(r.members.begin(), r.members.end(), *r.condorcet_winner);
  for (const auto& q : quotas) r.local.emplace_back(q, is_locally_stable(p, r.members, q));

  if (r.gehrlein.stable && !r.condorcet.condorcet) throw std::logic_error("Gehrlein-stable set is not a Condorcet set");
  if (r.gehrlein.stable && r.locally_stable(Quota::majority()) == false)
    throw std::logic_error("Gehrlein-stable set is not locally stable at the majority quota");
  if (p.single_peaked() && r.contains_condorcet_winner && *r.contains_condorcet_winner != r.condorcet.condorcet)
    throw std::logic_error("Condorcet-set status disagrees with Condorcet-winner membership");
  return r;
}

/// Flat JSON object; candidates as letters, block sizes as integers.
inline nlohmann::ordered_json to_json(const StabilityReport& r) {
  const std::size_t m = r.candidates;
  auto label = [m](CandidateId c) { return candidate_label(c, m); };
  nlohmann::ordered_json j;
  j["winning_set"] = committee_label(r.members, m);
  j["members"] = nlohmann::ordered_json::array();
  for (CandidateId c : r.members) j["members"].push_back(c.index);
  j["adjacent"] = r.adjacent;
  j["gehrlein_stable"] = r.gehrlein.stable;
  if (!r.gehrlein.violations.empty()) {
    j["gehrlein_challenger"] = label(r.gehrlein.violations.front().first);
    j["gehrlein_member"] = label(r.gehrlein.violations.front().second);
  }
  j["condorcet_set"] = r.condorcet.condorcet;
  if (!r.condorcet.uncovered.empty()) j["condorcet_uncovered"] = label(r.condorcet.uncovered.front());
  j["condorcet_winner"] = r.condorcet_winner ? nlohmann::ordered_json(label(*r.condorcet_winner)) : nullptr;
  j["contains_condorcet_winner"] =
      r.contains_condorcet_winner ? nlohmann::ordered_json(*r.contains_condorcet_winner) : nullptr;
  for (const auto& [q, check] : r.local) {
    const auto n = q.name();
    j["locally_stable_" + n] = check.stable;
    j["quota_" + n] = check.quota;
    j["blocker_" + n] = check.blocker ? nlohmann::ordered_json(label(*check.blocker)) : nullptr;
    j["block_size_" + n] = check.block;
  }
  return j;
}

}  // namespace spvote
