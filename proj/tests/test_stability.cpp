#include <gtest/gtest.h>

#include "properties.hpp"
#include "spvote/generators.hpp"
#include "spvote/profile_io.hpp"
#include "spvote/stability.hpp"
#include "support.hpp"

using namespace spvote;
using testkit::letters;

namespace {

Profile fixture(const std::string& name) { return read_profile_file(std::string(SPVOTE_FIXTURE_DIR) + "/" + name); }

CandidateId c(char ch) { return CandidateId(static_cast<std::uint32_t>(ch - 'A')); }

}  // namespace

TEST(Quota, Values) {
  EXPECT_EQ(Quota::majority().value(61, 2), 31u);
  EXPECT_EQ(Quota::droop().value(61, 2), 21u);
  EXPECT_EQ(Quota::droop().value(145, 2), 49u);
  EXPECT_EQ(Quota::custom(7).value(61, 2), 7u);
  EXPECT_THROW(Quota::custom(0).value(61, 2), std::invalid_argument);
  EXPECT_THROW(Quota::custom(62).value(61, 2), std::invalid_argument);
}

TEST(Quota, Parse) {
  EXPECT_EQ(parse_quota("majority"), Quota::majority());
  EXPECT_EQ(parse_quota("droop"), Quota::droop());
  EXPECT_EQ(parse_quota("12"), Quota::custom(12));
  EXPECT_EQ(Quota::custom(12).name(), "q12");
  EXPECT_THROW(parse_quota("hare"), std::invalid_argument);
}

TEST(Adjacent, Examples) {
  EXPECT_TRUE(is_adjacent(letters("BC")));
  EXPECT_FALSE(is_adjacent(letters("BD")));
  EXPECT_TRUE(is_adjacent(letters("C")));
}

TEST(Gehrlein, CenterSqueeze) {
  const auto t = pairwise_matrix(fixture("center_squeeze61.profile"));
  const auto g = is_gehrlein_stable(letters("BD"), t);
  EXPECT_FALSE(g.stable);
  ASSERT_FALSE(g.violations.empty());
  EXPECT_EQ(g.violations.front(), std::make_pair(c('C'), c('B')));
}

TEST(Gehrlein, AllCandidatesTrivially) {
  const auto t = pairwise_matrix(fixture("center_squeeze61.profile"));
  EXPECT_TRUE(is_gehrlein_stable(letters("ABCDE"), t).stable);
  EXPECT_TRUE(is_condorcet_set(letters("ABCDE"), t).condorcet);
}

TEST(Gehrlein, SixCandidatesAbEveryPairViolates) {
  const auto t = pairwise_matrix(fixture("m6_ab.profile"));
  const auto g = is_gehrlein_stable(letters("AB"), t);
  EXPECT_FALSE(g.stable);
  EXPECT_EQ(g.violations.size(), 8u);
}

TEST(CondorcetSet, Examples) {
  const Profile ex1 = fixture("example1.profile");
  EXPECT_TRUE(is_condorcet_set(letters("AB"), pairwise_matrix(ex1)).condorcet);
  const auto cs = is_condorcet_set(letters("BD"), pairwise_matrix(fixture("center_squeeze61.profile")));
  EXPECT_FALSE(cs.condorcet);
  EXPECT_EQ(cs.uncovered, std::vector<CandidateId>{c('C')});
}

TEST(BlockSize, CenterSqueeze) {
  const Profile p = fixture("center_squeeze61.profile");
  EXPECT_EQ(block_size(p, c('C'), letters("BD")), 21u);
  EXPECT_THROW(block_size(p, c('B'), letters("BD")), std::invalid_argument);
}

TEST(BlockSize, LastPlaceIsZero) {
  const Profile p = profile_from_counts(3, {{testkit::ranking_of("ABC"), 3}, {testkit::ranking_of("BAC"), 2}});
  EXPECT_EQ(block_size(p, c('C'), letters("A")), 0u);
}

TEST(BlockSize, MatchesExpandedVoters) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = 3 + i % 5;
    const Profile p = testkit::random_sp_profile(m, 101, rng);
    const auto all = props::subsets(m, 1 + i % (m - 1));
    const Committee& w = all[rng() % all.size()];
    for (std::uint32_t x = 0; x < m; ++x) {
      if (std::binary_search(w.begin(), w.end(), CandidateId(x))) continue;
      std::uint64_t brute = 0;
      for (const auto& r : testkit::expand(p))
        if (std::all_of(w.begin(), w.end(), [&](CandidateId y) { return r.prefers(CandidateId(x), y); })) ++brute;
      EXPECT_EQ(block_size(p, CandidateId(x), w), brute);
    }
  }
}

TEST(LocalStability, CenterSqueezeQuotas) {
  const Profile p = fixture("center_squeeze61.profile");
  const auto maj = is_locally_stable(p, letters("BD"), Quota::majority());
  EXPECT_TRUE(maj.stable);
  EXPECT_EQ(maj.quota, 31u);
  const auto droop = is_locally_stable(p, letters("BD"), Quota::droop());
  EXPECT_FALSE(droop.stable);
  EXPECT_EQ(droop.quota, 21u);
  EXPECT_EQ(droop.blocker, c('C'));
  EXPECT_EQ(droop.block, 21u);
}

TEST(LocalStability, BlockOfExactlyQuotaViolates) {
  const Profile p = fixture("center_squeeze61.profile");
  EXPECT_FALSE(is_locally_stable(p, letters("BD"), Quota::custom(21)).stable);
  EXPECT_TRUE(is_locally_stable(p, letters("BD"), Quota::custom(22)).stable);
}

TEST(LocalStability, SixCandidatesAb) {
  const auto r = is_locally_stable(fixture("m6_ab.profile"), letters("AB"), Quota::majority());
  EXPECT_EQ(r.quota, 5u);
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.block, 5u);
}

TEST(Classify, SevenCandidates) {
  const auto bce = classify(fixture("m7_bce.profile"), letters("BCE"));
  EXPECT_FALSE(bce.gehrlein_stable());
  EXPECT_TRUE(bce.condorcet_set());
  EXPECT_EQ(bce.locally_stable(Quota::majority()), true);
  const auto abc = classify(fixture("m7_abc.profile"), letters("ABC"));
  EXPECT_EQ(abc.locally_stable(Quota::majority()), false);
}

TEST(Classify, UnanimousTopK) {
  const Profile p = profile_from_counts(5, {{testkit::ranking_of("CBDAE"), 9}});
  const auto r = classify(p, letters("BC"));
  EXPECT_TRUE(r.adjacent);
  EXPECT_TRUE(r.gehrlein_stable());
  EXPECT_TRUE(r.condorcet_set());
  EXPECT_EQ(r.contains_condorcet_winner, true);
  EXPECT_EQ(r.locally_stable(Quota::majority()), true);
  EXPECT_EQ(r.locally_stable(Quota::droop()), true);
}

TEST(Classify, NoCondorcetWinnerLeavesMembershipUnset) {
  const Profile cycle = profile_from_counts(3, {{testkit::ranking_of("ABC"), 1},
                                                {testkit::ranking_of("BCA"), 1},
                                                {testkit::ranking_of("CAB"), 1}});
  const auto r = classify(cycle, letters("A"));
  EXPECT_FALSE(r.condorcet_winner.has_value());
  EXPECT_FALSE(r.contains_condorcet_winner.has_value());
}

TEST(Classify, RejectsBadCommittees) {
  const Profile p = fixture("center_squeeze61.profile");
  EXPECT_THROW(classify(p, Committee{}), std::invalid_argument);
  EXPECT_THROW(classify(p, testkit::make_committee({1, 1})), std::invalid_argument);
  EXPECT_THROW(classify(p, testkit::make_committee({7})), std::invalid_argument);
}

TEST(Classify, JsonWitnesses) {
  const auto j = to_json(classify(fixture("center_squeeze61.profile"), letters("BD")));
  EXPECT_EQ(j["winning_set"], "BD");
  EXPECT_EQ(j["gehrlein_challenger"], "C");
  EXPECT_EQ(j["condorcet_uncovered"], "C");
  EXPECT_EQ(j["condorcet_winner"], "C");
  EXPECT_EQ(j["locally_stable_majority"], true);
  EXPECT_EQ(j["locally_stable_droop"], false);
  EXPECT_EQ(j["blocker_droop"], "C");
  EXPECT_EQ(j["block_size_droop"], 21);
}

TEST(Properties, SubsetsOnRandomProfiles) {
  std::mt19937_64 rng(41);
  props::Stats st;
  for (int i = 0; i < 1500; ++i) props::check_subsets(testkit::random_sp_profile(4 + i % 4, 201, rng), st);
  EXPECT_TRUE(st.ok()) << (st.examples.empty() ? "" : st.examples.front());
}

TEST(Properties, BlocPropositionsOnRandomProfiles) {
  std::mt19937_64 rng(42);
  RandomStream iac(43);
  props::Stats st;
  for (int i = 0; i < 3000; ++i) {
    const std::size_t m = 4 + i % 4;
    const Profile p = i % 2 ? testkit::random_sp_profile(m, 201, rng)
                            : sample_iac_single_peaked(m, 2 * (rng() % 100) + 1, iac);
    for (std::size_t k = 1; k < m; ++k) props::check_bloc_propositions(p, k, st);
  }
  EXPECT_TRUE(st.ok()) << st.failed << " failures; first:\n" << (st.examples.empty() ? "" : st.examples.front());
}

TEST(Properties, EdgeClaimHoldsForAdjacentCommittees) {
  std::mt19937_64 rng(44);
  props::Stats st;
  for (int i = 0; i < 3000; ++i) {
    const std::size_t m = 4 + i % 4;
    const Profile p = testkit::random_sp_profile(m, 201, rng);
    for (std::size_t k = 1; k < m; ++k)
      if (is_adjacent(bloc_winners(p, k))) props::check_edge_literal(p, k, st);
  }
  EXPECT_TRUE(st.ok()) << (st.examples.empty() ? "" : st.examples.front());
}

TEST(Properties, EdgeClaimFailsForSomeSplitCommittees) {
  // Winners B and F; G sits right of F yet beats B 84-65.
  const Profile p = parse_profile(
      "m=7\n18: A B C D E F G\n21: B C A D E F G\n26: B C D E F A G\n51: E F D C G B A\n33: F G E D C B A\n");
  EXPECT_EQ(bloc_winners(p, 2).members, letters("BF"));
  EXPECT_TRUE(pairwise_matrix(p).beats(c('G'), c('B')));
  props::Stats st;
  props::check_edge_literal(p, 2, st);
  EXPECT_EQ(st.failed, 1u);
  props::Stats supported;
  props::check_bloc_propositions(p, 2, supported);
  EXPECT_TRUE(supported.ok());
}
