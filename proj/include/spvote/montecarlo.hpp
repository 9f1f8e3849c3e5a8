#pragma once

// Simulation campaigns: per trial, draw a single-peaked profile, run Bloc and
// k-Copeland, classify the Bloc committee and aggregate integer counters.
// Trial t always uses derive_stream(seed, t), and counters merge by addition,
// so results do not depend on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spvote/elections.hpp"
#include "spvote/generators.hpp"
#include "spvote/profiles.hpp"
#include "spvote/stability.hpp"

namespace spvote {

enum class Model { iac, en, eb };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::iac: return "iac";
    case Model::en: return "en";
    case Model::eb: return "eb";
  }
  return "?";
}

inline Model parse_model(const std::string& s) {
  if (s == "iac") return Model::iac;
  if (s == "en") return Model::en;
  if (s == "eb") return Model::eb;
  throw std::invalid_argument("unknown model '" + s + "' (expected iac, en or eb)");
}

enum class TiePolicy { resolve_leftmost, discard_trial };

inline std::string tie_policy_name(TiePolicy p) {
  return p == TiePolicy::resolve_leftmost ? "resolve_leftmost" : "discard_trial";
}

inline TiePolicy parse_tie_policy(const std::string& s) {
  if (s == "resolve_leftmost" || s == "leftmost") return TiePolicy::resolve_leftmost;
  if (s == "discard_trial" || s == "discard") return TiePolicy::discard_trial;
  throw std::invalid_argument("unknown tie policy '" + s + "'");
}

/// Component spread for the bimodal model. With modes at -1 and 1 this puts
/// them four standard deviations apart; 1.0 gives a nearly flat-topped mixture.
inline constexpr double kDefaultEbStddev = 0.5;

struct ExperimentConfig {
  std::size_t m = 5;
  std::size_t k = 2;
  std::uint64_t voters = 1001;
  std::uint64_t trials = 1000;
  Model model = Model::iac;
  std::uint64_t seed = 1;
  TiePolicy tie_policy = TiePolicy::resolve_leftmost;
  std::vector<Quota> quotas = {Quota::majority(), Quota::droop()};
  /// Spread of each EB component (modes at -1 and 1).
  double eb_stddev = kDefaultEbStddev;
  /// Worker threads; 0 means hardware concurrency. Never affects results.
  unsigned threads = 1;

  void validate() const {
    if (m < 2) throw std::invalid_argument("need at least 2 candidates");
    if (k < 1 || k >= m) throw std::invalid_argument("need 1 <= winners < candidates");
    if (voters % 2 == 0) throw std::invalid_argument("number of voters must be odd");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (model == Model::iac && m > 20) throw std::invalid_argument("IAC supports at most 20 candidates");
    if (model != Model::iac && m > voters) throw std::invalid_argument("spatial models need candidates <= voters");
    if (!(eb_stddev > 0.0) || !std::isfinite(eb_stddev)) throw std::invalid_argument("EB standard deviation must be positive");
    for (const auto& q : quotas) (void)q.value(voters, k);
  }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::uint64_t discarded = 0;
  std::map<Committee, std::uint64_t> bloc_freq;
  std::map<Committee, std::uint64_t> copeland_freq;
  std::uint64_t agreement_count = 0;
  std::uint64_t bloc_tie_count = 0;
  std::uint64_t copeland_tie_count = 0;
  std::uint64_t gehrlein_count = 0;
  std::uint64_t condorcet_set_count = 0;
  /// Aligned with config.quotas.
  std::vector<std::uint64_t> locally_stable_count;

  std::uint64_t counted() const { return config.trials - discarded; }
  double rate(std::uint64_t n) const { return counted() ? static_cast<double>(n) / static_cast<double>(counted()) : 0.0; }
  double agreement_rate() const { return rate(agreement_count); }
  double gehrlein_rate() const { return rate(gehrlein_count); }
  double condorcet_set_rate() const { return rate(condorcet_set_count); }
  double locally_stable_rate(std::size_t quota_index) const { return rate(locally_stable_count.at(quota_index)); }

  double bloc_probability(const Committee& w) const {
    auto it = bloc_freq.find(w);
    return it == bloc_freq.end() ? 0.0 : rate(it->second);
  }
  double copeland_probability(const Committee& w) const {
    auto it = copeland_freq.find(w);
    return it == copeland_freq.end() ? 0.0 : rate(it->second);
  }

  void merge(const ExperimentResult& other) {
    discarded += other.discarded;
    for (const auto& [w, n] : other.bloc_freq) bloc_freq[w] += n;
    for (const auto& [w, n] : other.copeland_freq) copeland_freq[w] += n;
    agreement_count += other.agreement_count;
    bloc_tie_count += other.bloc_tie_count;
    copeland_tie_count += other.copeland_tie_count;
    gehrlein_count += other.gehrlein_count;
    condorcet_set_count += other.condorcet_set_count;
    locally_stable_count.resize(std::max(locally_stable_count.size(), other.locally_stable_count.size()), 0);
    for (std::size_t i = 0; i < other.locally_stable_count.size(); ++i)
      locally_stable_count[i] += other.locally_stable_count[i];
  }

  friend bool operator==(const ExperimentResult& a, const ExperimentResult& b) {
    return a.discarded == b.discarded && a.bloc_freq == b.bloc_freq && a.copeland_freq == b.copeland_freq &&
           a.agreement_count == b.agreement_count && a.bloc_tie_count == b.bloc_tie_count &&
           a.copeland_tie_count == b.copeland_tie_count && a.gehrlein_count == b.gehrlein_count &&
           a.condorcet_set_count == b.condorcet_set_count && a.locally_stable_count == b.locally_stable_count;
  }
};

/// Draws the profile for one trial of an experiment.
class TrialGenerator {
 public:
  explicit TrialGenerator(const ExperimentConfig& cfg) : cfg_(cfg) {
    if (cfg.model == Model::iac) rankings_ = enumerate_single_peaked_rankings(cfg.m);
  }

  Profile profile(std::uint64_t trial) const { return draw(trial).profile; }

  SpatialSample draw(std::uint64_t trial) const {
    RandomStream rng = derive_stream(RandomSource{cfg_.seed}, trial);
    if (cfg_.model == Model::iac) return SpatialSample{sample_iac(cfg_.m, rankings_, cfg_.voters, rng), {}, {}};
    SpatialSpec spec;
    spec.distribution = cfg_.model == Model::en ? VoterDistribution::normal() : VoterDistribution::bimodal(-1.0, 1.0, cfg_.eb_stddev);
    spec.voters = cfg_.voters;
    spec.candidates = cfg_.m;
    return sample_spatial(spec, rng);
  }

 private:
  ExperimentConfig cfg_;
  std::vector<Ranking> rankings_;
};

namespace detail {

inline void run_trials(const ExperimentConfig& cfg, const TrialGenerator& gen, std::uint64_t begin,
                       std::uint64_t end, ExperimentResult& out) {
  out.locally_stable_count.assign(cfg.quotas.size(), 0);
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    const Profile p = gen.profile(trial);
    const WinningSet bloc = bloc_winners(p, cfg.k);
    const PairwiseMatrix t = pairwise_matrix(p);
    const WinningSet cope = k_copeland_selection(t, cfg.k);
    if (bloc.tie_broken) ++out.bloc_tie_count;
    if (cope.tie_broken) ++out.copeland_tie_count;
    if (cfg.tie_policy == TiePolicy::discard_trial && (bloc.tie_broken || cope.tie_broken)) {
      ++out.discarded;
      continue;
    }
    ++out.bloc_freq[bloc.members];
    ++out.copeland_freq[cope.members];
    if (bloc.members == cope.members) ++out.agreement_count;
    if (is_gehrlein_stable(bloc.members, t).stable) ++out.gehrlein_count;
    if (is_condorcet_set(bloc.members, t).condorcet) ++out.condorcet_set_count;
    for (std::size_t q = 0; q < cfg.quotas.size(); ++q)
      if (is_locally_stable(p, bloc.members, cfg.quotas[q]).stable) ++out.locally_stable_count[q];
  }
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const TrialGenerator gen(cfg);

  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));

  std::vector<ExperimentResult> parts(workers);
  auto chunk = [&](unsigned w) {
    const std::uint64_t begin = cfg.trials * w / workers;
    const std::uint64_t end = cfg.trials * (w + 1) / workers;
    detail::run_trials(cfg, gen, begin, end, parts[w]);
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          chunk(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.config = cfg;
  result.locally_stable_count.assign(cfg.quotas.size(), 0);
  for (const auto& part : parts) result.merge(part);
  return result;
}

/// Classes of Bloc committees that are provably stable for a given (m, k).
enum class GuaranteedClass { none, locally_stable, gehrlein };

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Guaranteed class of a Bloc committee on single-peaked odd-N profiles,
/// for 4 <= m <= 7 and 2 <= k <= m-1.
inline GuaranteedClass guaranteed_class(std::size_t m, std::size_t k, const Committee& w) {
  if (m < 4 || m > 7 || k < 2 || k >= m)
    throw UnsupportedError("no guaranteed-class table for m=" + std::to_string(m) + ", k=" + std::to_string(k));
  if (2 * k >= m) return GuaranteedClass::gehrlein;

  struct Row {
    std::size_t m, k;
    const char* label;
    GuaranteedClass cls;
  };
  static const Row table[] = {
      {5, 2, "BC", GuaranteedClass::gehrlein},       {5, 2, "CD", GuaranteedClass::gehrlein},
      {5, 2, "BD", GuaranteedClass::locally_stable}, {6, 2, "CD", GuaranteedClass::gehrlein},
      {6, 2, "BD", GuaranteedClass::locally_stable}, {6, 2, "BE", GuaranteedClass::locally_stable},
      {6, 2, "CE", GuaranteedClass::locally_stable}, {7, 3, "BCD", GuaranteedClass::gehrlein},
      {7, 3, "CDE", GuaranteedClass::gehrlein},      {7, 3, "DEF", GuaranteedClass::gehrlein},
      {7, 3, "BCE", GuaranteedClass::locally_stable}, {7, 3, "CEF", GuaranteedClass::locally_stable},
  };
  const std::string label = committee_label(w, m);
  for (const auto& row : table)
    if (row.m == m && row.k == k && label == row.label) return row.cls;
  return GuaranteedClass::none;
}

struct LabelBounds {
  double gehrlein = 0.0;
  /// Gehrlein-guaranteed plus locally-stable-guaranteed committees.
  double locally_stable = 0.0;
};

/// Sums observed Bloc committee frequencies over the guaranteed classes.
inline LabelBounds stability_lower_bound_from_labels(const ExperimentResult& r) {
  LabelBounds b;
  std::uint64_t g = 0, ls = 0;
  for (const auto& [w, n] : r.bloc_freq) {
    switch (guaranteed_class(r.config.m, r.config.k, w)) {
      case GuaranteedClass::gehrlein:
        g += n;
        ls += n;
        break;
      case GuaranteedClass::locally_stable: ls += n; break;
      case GuaranteedClass::none: break;
    }
  }
  b.gehrlein = r.rate(g);
  b.locally_stable = r.rate(ls);
  return b;
}

inline std::optional<LabelBounds> try_label_bounds(const ExperimentResult& r) {
  try {
    return stability_lower_bound_from_labels(r);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

}  // namespace spvote
