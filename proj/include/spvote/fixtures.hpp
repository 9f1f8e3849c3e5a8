#pragma once

// Deterministic reference profiles and the facts each one must reproduce.
// Profiles live in fixture files (profile text format) so each can also be
// run through `spvote elect` / `spvote classify` by hand.

#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spvote/elections.hpp"
#include "spvote/profile_io.hpp"
#include "spvote/stability.hpp"

namespace spvote::fixtures {

/// Collects mismatches as "what: expected X, got Y".
class Checker {
 public:
  template <typename T>
  void expect_eq(const std::string& what, const T& expected, const T& actual) {
    if (expected == actual) return;
    std::ostringstream os;
    os << what << ": expected " << expected << ", got " << actual;
    failures_.push_back(os.str());
  }

  void expect(const std::string& what, bool ok) {
    if (!ok) failures_.push_back(what);
  }

  std::vector<std::string> take() { return std::move(failures_); }

 private:
  std::vector<std::string> failures_;
};

inline CandidateId letter(char ch) { return CandidateId(static_cast<std::uint32_t>(ch - 'A')); }

inline Committee committee(const std::string& letters) {
  Committee w;
  for (char ch : letters) w.push_back(letter(ch));
  std::sort(w.begin(), w.end());
  return w;
}

inline std::string label(const Committee& w, std::size_t m) { return committee_label(w, m); }

inline std::string labels(const std::vector<WinningSet>& sets, std::size_t m) {
  std::string out;
  for (const auto& w : sets) out += (out.empty() ? "" : ",") + committee_label(w.members, m);
  return out;
}

inline std::string contest(const PairwiseMatrix& t, char a, char b) {
  return std::to_string(t(letter(a), letter(b))) + "-" + std::to_string(t(letter(b), letter(a)));
}

struct Fixture {
  std::string name;
  std::string file;
  std::string summary;
  std::function<void(const Profile&, Checker&)> check;
};

inline const std::vector<Fixture>& all() {
  static const std::vector<Fixture> list = {
      {"example1-bloc", "example1.profile", "Bloc outcomes k=1..4 and committee monotonicity",
       [](const Profile& p, Checker& c) {
         c.expect_eq<std::uint64_t>("voters", 145, p.voters());
         c.expect_eq("single-peaked", false, p.single_peaked());
         const auto t2 = bloc_tally(p, 2).votes;
         c.expect_eq<std::string>("k=2 tallies", "50 140 20 35 45",
                                  std::to_string(t2[0]) + " " + std::to_string(t2[1]) + " " + std::to_string(t2[2]) +
                                      " " + std::to_string(t2[3]) + " " + std::to_string(t2[4]));
         const auto t3 = bloc_tally(p, 3).votes;
         c.expect_eq<std::string>("k=3 tallies", "50 145 110 55 75",
                                  std::to_string(t3[0]) + " " + std::to_string(t3[1]) + " " + std::to_string(t3[2]) +
                                      " " + std::to_string(t3[3]) + " " + std::to_string(t3[4]));
         const char* expected[] = {"A", "AB", "BCE", "BCDE"};
         for (std::size_t k = 1; k <= 4; ++k) {
           const auto w = bloc_winners(p, k);
           c.expect_eq<std::string>("bloc k=" + std::to_string(k), expected[k - 1], label(w.members, 5));
           c.expect_eq("bloc k=" + std::to_string(k) + " tie", false, w.tie_broken);
         }
         const auto v = committee_monotonicity_violations(p, 4);
         c.expect("committee monotonicity violation (2, A) missing",
                  std::find(v.begin(), v.end(), std::make_pair(std::size_t{2}, letter('A'))) != v.end());
       }},
      {"example1-copeland", "example1.profile", "head-to-head table, Copeland scores and tied committees",
       [](const Profile& p, Checker& c) {
         const auto t = pairwise_matrix(p);
         const std::pair<const char*, const char*> contests[] = {
             {"AB", "50-95"},   {"AC", "50-95"},  {"AD", "50-95"},  {"AE", "50-95"},  {"BC", "125-20"},
             {"BD", "110-35"}, {"BE", "140-5"}, {"CD", "110-35"}, {"CE", "70-75"}, {"DE", "100-45"}};
         for (const auto& [pair, score] : contests)
           c.expect_eq<std::string>(std::string(1, pair[0]) + " vs " + pair[1], score, contest(t, pair[0], pair[1]));
         const auto s = copeland_scores(t);
         std::string scores;
         for (std::size_t i = 0; i < 5; ++i) scores += (i ? " " : "") + format_copeland_score(s.half_points[i]);
         c.expect_eq<std::string>("copeland scores", "0 4 2 2 2", scores);
         c.expect_eq<std::string>("copeland k=2", "BC,BD,BE", labels(k_copeland_winners(t, 2), 5));
         c.expect_eq<std::string>("copeland k=3", "BCD,BCE,BDE", labels(k_copeland_winners(t, 3), 5));
         c.expect_eq<std::string>("copeland k=4", "BCDE", labels(k_copeland_winners(t, 4), 5));
         const auto cw = condorcet_winner(t);
         c.expect_eq<std::string>("condorcet winner", "B", cw ? candidate_label(*cw, 5) : "none");
         const auto ab = classify(p, committee("AB"));
         c.expect_eq("AB condorcet set", true, ab.condorcet_set());
         c.expect_eq("AB gehrlein-stable", false, ab.gehrlein_stable());
       }},
      {"median-elimination-211", "median211.profile", "Condorcet ranking by median elimination",
       [](const Profile& p, Checker& c) {
         c.expect_eq<std::uint64_t>("voters", 211, p.voters());
         c.expect_eq("single-peaked", true, p.single_peaked());
         std::string order;
         for (auto x : median_elimination_ranking(p)) order += candidate_label(x, 4);
         c.expect_eq<std::string>("median elimination", "CBAD", order);
         const auto s = copeland_scores(pairwise_matrix(p));
         std::string scores;
         for (char x : std::string("CBAD")) scores += (scores.empty() ? "" : " ") + format_copeland_score(s.half_points[letter(x).index]);
         c.expect_eq<std::string>("copeland scores C B A D", "3 2 1 0", scores);
         c.expect_eq<std::string>("adjusted profile", "m=3\n50: A B C\n141: B A C\n20: C B A\n",
                                  serialize_profile(eliminate_candidate(p, letter('C'))));
       }},
      {"center-squeeze-61", "center_squeeze61.profile", "non-adjacent Bloc committee BD around Condorcet winner C",
       [](const Profile& p, Checker& c) {
         c.expect_eq<std::uint64_t>("voters", 61, p.voters());
         c.expect_eq<std::string>("bloc k=2", "BD", label(bloc_winners(p, 2).members, 5));
         const auto t = pairwise_matrix(p);
         c.expect_eq<std::string>("C vs B", "41-20", contest(t, 'C', 'B'));
         c.expect_eq<std::string>("C vs D", "41-20", contest(t, 'C', 'D'));
         const auto cw = condorcet_winner(t);
         c.expect_eq<std::string>("condorcet winner", "C", cw ? candidate_label(*cw, 5) : "none");
         c.expect_eq<std::uint64_t>("block C over BD", 21, block_size(p, letter('C'), committee("BD")));
         const auto r = classify(p, committee("BD"));
         c.expect_eq("gehrlein-stable", false, r.gehrlein_stable());
         c.expect_eq("condorcet set", false, r.condorcet_set());
         c.expect_eq("locally stable (majority, q=31)", true, *r.locally_stable(Quota::majority()));
         c.expect_eq("locally stable (droop, q=21)", false, *r.locally_stable(Quota::droop()));
         c.expect_eq<std::uint64_t>("droop quota", 21, Quota::droop().value(61, 2));
         c.expect_eq<std::string>("copeland k=2", "CD", labels(k_copeland_winners(t, 2), 5));
       }},
      {"ab-counterexample-251", "ab_counterexample251.profile", "Bloc AB beaten head to head and locally unstable",
       [](const Profile& p, Checker& c) {
         c.expect_eq<std::uint64_t>("voters", 251, p.voters());
         c.expect_eq("single-peaked", true, p.single_peaked());
         const auto w = bloc_winners(p, 2);
         c.expect_eq<std::string>("bloc k=2", "AB", label(w.members, 5));
         const auto tally = bloc_tally(p, 2).votes;
         c.expect_eq<std::string>("A/B tallies", "101/151", std::to_string(tally[0]) + "/" + std::to_string(tally[1]));
         const auto t = pairwise_matrix(p);
         for (char x : std::string("CDE")) c.expect_eq<std::string>(std::string(1, x) + " vs A", "150-101", contest(t, x, 'A'));
         c.expect_eq<std::string>("C vs B", "150-101", contest(t, 'C', 'B'));
         c.expect_eq("locally stable (majority)", false, *classify(p, w.members).locally_stable(Quota::majority()));
       }},
      {"bd-counterexample-205", "bd_counterexample205.profile", "Bloc BD with E beating B and C beating both",
       [](const Profile& p, Checker& c) {
         c.expect_eq<std::uint64_t>("voters", 205, p.voters());
         const auto w = bloc_winners(p, 2);
         c.expect_eq<std::string>("bloc k=2", "BD", label(w.members, 5));
         const auto tally = bloc_tally(p, 2).votes;
         c.expect_eq<std::string>("B/D tallies", "102/103", std::to_string(tally[1]) + "/" + std::to_string(tally[3]));
         const auto t = pairwise_matrix(p);
         c.expect_eq<std::string>("E vs B", "103-102", contest(t, 'E', 'B'));
         c.expect_eq<std::string>("C vs B", "104-101", contest(t, 'C', 'B'));
         c.expect_eq<std::string>("C vs D", "103-102", contest(t, 'C', 'D'));
         c.expect_eq("locally stable (majority)", true, *classify(p, w.members).locally_stable(Quota::majority()));
       }},
      {"m6-ab", "m6_ab.profile", "six candidates, committee AB loses every contest",
       [](const Profile& p, Checker& c) {
         const auto w = bloc_winners(p, 2);
         c.expect_eq<std::string>("bloc k=2", "AB", label(w.members, 6));
         const auto t = pairwise_matrix(p);
         const auto g = is_gehrlein_stable(w.members, t);
         c.expect_eq<std::size_t>("violating (outsider, winner) pairs", 8, g.violations.size());
         const auto cw = condorcet_winner(t);
         c.expect_eq<std::string>("condorcet winner", "D", cw ? candidate_label(*cw, 6) : "none");
         const auto ls = is_locally_stable(p, w.members, Quota::majority());
         c.expect_eq("locally stable (majority)", false, ls.stable);
         c.expect_eq<std::uint64_t>("largest block", 5, ls.block);
       }},
      {"m6-bc", "m6_bc.profile", "six candidates, committee BC with D beating both",
       [](const Profile& p, Checker& c) {
         const auto w = bloc_winners(p, 2);
         c.expect_eq<std::string>("bloc k=2", "BC", label(w.members, 6));
         const auto t = pairwise_matrix(p);
         c.expect("D beats B", t.beats(letter('D'), letter('B')));
         c.expect("D beats C", t.beats(letter('D'), letter('C')));
         c.expect("E beats B", t.beats(letter('E'), letter('B')));
         c.expect("F beats B", t.beats(letter('F'), letter('B')));
         const auto r = classify(p, w.members);
         c.expect_eq("condorcet set", false, r.condorcet_set());
         c.expect_eq("locally stable (majority)", false, *r.locally_stable(Quota::majority()));
       }},
      {"m7-abc", "m7_abc.profile", "seven candidates, committee ABC not locally stable",
       [](const Profile& p, Checker& c) {
         const auto w = bloc_winners(p, 3);
         c.expect_eq<std::string>("bloc k=3", "ABC", label(w.members, 7));
         const auto t = pairwise_matrix(p);
         const auto cw = condorcet_winner(t);
         c.expect_eq<std::string>("condorcet winner", "D", cw ? candidate_label(*cw, 7) : "none");
         for (char x : std::string("DEFG")) c.expect(std::string(1, x) + " beats A", t.beats(letter(x), letter('A')));
         c.expect_eq<std::uint64_t>("block D over ABC", 5, block_size(p, letter('D'), w.members));
         c.expect_eq("locally stable (majority)", false, *classify(p, w.members).locally_stable(Quota::majority()));
       }},
      {"m7-bce", "m7_bce.profile", "seven candidates, committee BCE Condorcet and locally stable, not Gehrlein",
       [](const Profile& p, Checker& c) {
         const auto w = bloc_winners(p, 3);
         c.expect_eq<std::string>("bloc k=3", "BCE", label(w.members, 7));
         const auto t = pairwise_matrix(p);
         const auto cw = condorcet_winner(t);
         c.expect_eq<std::string>("condorcet winner", "E", cw ? candidate_label(*cw, 7) : "none");
         c.expect("D beats B", t.beats(letter('D'), letter('B')));
         c.expect("D beats C", t.beats(letter('D'), letter('C')));
         const auto r = classify(p, w.members);
         c.expect_eq("gehrlein-stable", false, r.gehrlein_stable());
         c.expect_eq("condorcet set", true, r.condorcet_set());
         c.expect_eq("locally stable (majority)", true, *r.locally_stable(Quota::majority()));
       }},
  };
  return list;
}

struct Outcome {
  std::string name;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Loads the fixture file from dir and runs its checks; load errors are failures.
inline Outcome run(const Fixture& f, const std::filesystem::path& dir) {
  Outcome o{f.name, {}};
  try {
    const Profile p = read_profile_file((dir / f.file).string());
    Checker c;
    f.check(p, c);
    o.failures = c.take();
  } catch (const std::exception& e) {
    o.failures.push_back(std::string("error: ") + e.what());
  }
  return o;
}

}  // namespace spvote::fixtures
