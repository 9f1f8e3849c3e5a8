#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spvote/elections.hpp"
#include "spvote/fixtures.hpp"
#include "spvote/generators.hpp"
#include "spvote/montecarlo.hpp"
#include "spvote/profile_io.hpp"
#include "spvote/profiles.hpp"
#include "spvote/report.hpp"
#include "spvote/stability.hpp"

#ifndef SPVOTE_FIXTURE_DIR
#define SPVOTE_FIXTURE_DIR "fixtures"
#endif

namespace spvote::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// "B,D", "B D" or "BD" (letters only) to a committee.
inline Committee parse_set(const std::string& text, std::size_t m) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  if (tokens.size() == 1 && m <= 26 && tokens[0].size() > 1) {
    const std::string run = tokens[0];
    tokens.clear();
    for (char ch : run) tokens.emplace_back(1, ch);
  }
  if (tokens.empty()) throw UsageError("empty candidate set");

  Committee w;
  for (const auto& tok : tokens) {
    auto c = parse_candidate(tok, m);
    if (!c) throw UsageError("candidate '" + tok + "' is not in the profile");
    if (std::find(w.begin(), w.end(), *c) != w.end()) throw UsageError("candidate '" + tok + "' listed twice");
    w.push_back(*c);
  }
  std::sort(w.begin(), w.end());
  return w;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline Profile load_election_profile(const std::string& path) {
  Profile p = read_profile_file(path);
  require_election_ready(p);
  return p;
}

struct Options {
  // rankings
  std::size_t rank_m = 0;
  // elect / classify
  std::string profile;
  std::size_t winners = 0;
  std::string method = "bloc";
  std::string set;
  std::vector<std::string> quotas;
  std::string format;
  // simulate
  std::string model;
  std::size_t sim_m = 0;
  std::uint64_t voters = 1001;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string tie_policy = "resolve_leftmost";
  unsigned threads = 1;
  std::string dump_positions;
  double eb_stddev = kDefaultEbStddev;
  // verify
  std::string fixture_dir = SPVOTE_FIXTURE_DIR;
  bool list = false;
};

inline int cmd_rankings(const Options& o, std::ostream& out) {
  if (o.rank_m < 1) throw UsageError("--candidates must be at least 1");
  const auto rankings = enumerate_single_peaked_rankings(o.rank_m);
  for (const auto& r : rankings) out << format_ranking(r) << '\n';
  out << "# " << rankings.size() << " single-peaked rankings for m=" << o.rank_m << '\n';
  return kOk;
}

inline int cmd_elect(const Options& o, std::ostream& out) {
  const Profile p = load_election_profile(o.profile);
  const std::size_t m = p.candidates();
  if (o.winners < 1 || o.winners >= m)
    throw UsageError("--winners must satisfy 1 <= k < " + std::to_string(m));
  const bool json = o.format == "json";
  if (!json && o.format != "text" && !o.format.empty()) throw UsageError("--format must be text or json");

  nlohmann::ordered_json j;
  j["method"] = o.method;
  j["winners"] = o.winners;
  j["voters"] = p.voters();
  j["candidates"] = m;
  j["single_peaked"] = p.single_peaked();

  std::vector<WinningSet> sets;
  std::string scores_line;
  if (o.method == "bloc") {
    const auto tally = bloc_tally(p, o.winners);
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (std::uint32_t c = 0; c < m; ++c) {
      t[candidate_label(CandidateId(c), m)] = tally.votes[c];
      scores_line += (c ? " " : "") + candidate_label(CandidateId(c), m) + "=" + std::to_string(tally.votes[c]);
    }
    j["tally"] = t;
    sets.push_back(bloc_winners(p, o.winners));
  } else if (o.method == "copeland") {
    const auto matrix = pairwise_matrix(p);
    const auto scores = copeland_scores(matrix);
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (std::uint32_t c = 0; c < m; ++c) {
      t[candidate_label(CandidateId(c), m)] = scores.half_points[c] / 2.0;
      scores_line += (c ? " " : "") + candidate_label(CandidateId(c), m) + "=" +
                     format_copeland_score(scores.half_points[c]);
    }
    j["scores"] = t;
    sets = k_copeland_winners(matrix, o.winners);
  } else {
    throw UsageError("--method must be bloc or copeland");
  }

  const bool tie = sets.front().tie_broken;
  if (json) {
    j["winning_sets"] = nlohmann::ordered_json::array();
    for (const auto& w : sets) {
      nlohmann::ordered_json e;
      e["label"] = committee_label(w.members, m);
      e["members"] = nlohmann::ordered_json::array();
      for (auto c : w.members) e["members"].push_back(c.index);
      j["winning_sets"].push_back(e);
    }
    j["tie"] = tie;
    j["tied_candidates"] = nlohmann::ordered_json::array();
    for (auto c : sets.front().tied_candidates) j["tied_candidates"].push_back(candidate_label(c, m));
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << "profile: " << p.voters() << " voters, " << m << " candidates, single-peaked: " << yes_no(p.single_peaked())
      << '\n';
  out << "method: " << o.method << ", k=" << o.winners << '\n';
  out << (o.method == "bloc" ? "tally: " : "scores: ") << scores_line << '\n';
  out << (sets.size() == 1 ? "winning set:" : "winning sets:");
  for (const auto& w : sets) out << ' ' << committee_label(w.members, m);
  out << '\n';
  out << "tie: " << yes_no(tie);
  if (tie) {
    out << " (tied at the boundary:";
    for (auto c : sets.front().tied_candidates) out << ' ' << candidate_label(c, m);
    out << ')';
    if (o.method == "bloc") out << ", resolved toward the leftmost candidates";
  }
  out << '\n';
  return kOk;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  const Profile p = load_election_profile(o.profile);
  const Committee w = parse_set(o.set, p.candidates());
  std::vector<Quota> quotas;
  for (const auto& q : o.quotas) {
    try {
      quotas.push_back(parse_quota(q));
      (void)quotas.back().value(p.voters(), w.size());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (quotas.empty()) quotas = {Quota::majority(), Quota::droop()};
  const auto report = classify(p, w, quotas);

  if (o.format == "text") {
    const std::size_t m = p.candidates();
    out << "winning set: " << committee_label(report.members, m) << '\n';
    out << "adjacent: " << yes_no(report.adjacent) << '\n';
    out << "gehrlein-stable: " << yes_no(report.gehrlein_stable());
    if (!report.gehrlein.violations.empty())
      out << " (" << candidate_label(report.gehrlein.violations.front().first, m) << " beats "
          << candidate_label(report.gehrlein.violations.front().second, m) << ')';
    out << '\n';
    out << "condorcet set: " << yes_no(report.condorcet_set());
    if (!report.condorcet.uncovered.empty())
      out << " (" << candidate_label(report.condorcet.uncovered.front(), m) << " uncovered)";
    out << '\n';
    out << "condorcet winner: " << (report.condorcet_winner ? candidate_label(*report.condorcet_winner, m) : "none")
        << '\n';
    for (const auto& [q, check] : report.local) {
      out << "locally stable (" << q.name() << ", q=" << check.quota << "): " << yes_no(check.stable);
      if (check.blocker)
        out << " (largest block: " << check.block << " voters for " << candidate_label(*check.blocker, m) << ')';
      out << '\n';
    }
  } else if (o.format.empty() || o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    throw UsageError("--format must be json or text");
  }
  return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  ReportFormat format{};
  try {
    cfg.model = parse_model(o.model);
    cfg.m = o.sim_m;
    cfg.k = o.winners;
    cfg.voters = o.voters;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.tie_policy = parse_tie_policy(o.tie_policy);
    cfg.threads = o.threads;
    cfg.eb_stddev = o.eb_stddev;
    if (!o.quotas.empty()) {
      cfg.quotas.clear();
      for (const auto& q : o.quotas) cfg.quotas.push_back(parse_quota(q));
    }
    format = parse_report_format(o.format.empty() ? "json" : o.format);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!o.dump_positions.empty()) {
    if (cfg.model == Model::iac) throw UsageError("--dump-positions needs a spatial model (en or eb)");
    std::ofstream csv(o.dump_positions);
    if (!csv) throw UsageError("cannot write '" + o.dump_positions + "'");
    write_positions_csv(csv, TrialGenerator(cfg).draw(0));
  }

  const ExperimentResult result = run_experiment(cfg);
  const std::string report = emit_report(result, format);
  if (o.out_path.empty()) {
    out << report;
    return kOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + o.out_path + "'");
  file << report;
  out << emit_report(result, ReportFormat::text);
  err << "wrote " << o.out_path << '\n';
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto& list = fixtures::all();
  if (o.list) {
    for (const auto& f : list) out << f.name << "  (" << f.file << ": " << f.summary << ")\n";
    return kOk;
  }
  std::size_t failed = 0;
  for (const auto& f : list) {
    const auto outcome = fixtures::run(f, o.fixture_dir);
    out << (outcome.passed() ? "PASS " : "FAIL ") << f.name << '\n';
    for (const auto& msg : outcome.failures) out << "    " << msg << '\n';
    if (!outcome.passed()) ++failed;
  }
  out << (list.size() - failed) << '/' << list.size() << " fixtures passed\n";
  return failed ? kVerifyFailed : kOk;
}

}  // namespace detail

/// Runs one invocation; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bloc and k-Copeland elections on single-peaked profiles", "spvote"};
  app.require_subcommand(1, 1);
  detail::Options o;

  auto* rankings = app.add_subcommand("rankings", "list the single-peaked rankings of m candidates");
  rankings->add_option("--candidates", o.rank_m, "number of candidates")->required();

  auto* elect = app.add_subcommand("elect", "run a Bloc or k-Copeland election on a profile file");
  elect->add_option("--profile", o.profile, "profile file")->required();
  elect->add_option("--winners", o.winners, "committee size k")->required();
  elect->add_option("--method", o.method, "bloc or copeland")->check(CLI::IsMember({"bloc", "copeland"}));
  elect->add_option("--format", o.format, "text or json");

  auto* cls = app.add_subcommand("classify", "classify a committee against a profile");
  cls->add_option("--profile", o.profile, "profile file")->required();
  cls->add_option("--set", o.set, "committee, e.g. \"B,D\"")->required();
  cls->add_option("--quota", o.quotas, "majority, droop or an integer (repeatable)");
  cls->add_option("--format", o.format, "json or text");

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo campaign");
  sim->add_option("--model", o.model, "iac, en or eb")->required();
  sim->add_option("--candidates", o.sim_m, "number of candidates")->required();
  sim->add_option("--winners", o.winners, "committee size k")->required();
  sim->add_option("--voters", o.voters, "number of voters (odd)");
  sim->add_option("--trials", o.trials, "number of trials");
  sim->add_option("--seed", o.seed, "master seed");
  sim->add_option("--format", o.format, "json, csv or text");
  sim->add_option("--out", o.out_path, "report file (summary goes to stdout)");
  sim->add_option("--tie-policy", o.tie_policy, "resolve_leftmost or discard_trial");
  sim->add_option("--quota", o.quotas, "local-stability quotas (repeatable)");
  sim->add_option("--threads", o.threads, "worker threads (0 = all cores)")->envname("SPVOTE_THREADS");
  sim->add_option("--eb-stddev", o.eb_stddev, "spread of each bimodal component (modes at -1 and 1)");
  sim->add_option("--dump-positions", o.dump_positions, "CSV of trial 0 voter and candidate positions");

  auto* verify = app.add_subcommand("verify", "replay the reference fixtures");
  verify->add_option("--fixtures", o.fixture_dir, "fixture directory");
  verify->add_flag("--list", o.list, "list fixtures without running them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*rankings) return detail::cmd_rankings(o, out);
    if (*elect) return detail::cmd_elect(o, out);
    if (*cls) return detail::cmd_classify(o, out);
    if (*sim) return detail::cmd_simulate(o, out, err);
    if (*verify) return detail::cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"spvote"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace spvote::cli
