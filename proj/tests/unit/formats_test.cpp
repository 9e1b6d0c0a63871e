#include <gtest/gtest.h>

#include "prefforge/approval_cultures.hpp"
#include "prefforge/ordinal_cultures.hpp"
#include "prefforge/pabulib.hpp"
#include "prefforge/preflib.hpp"

using namespace prefforge;

namespace {

const char* kSoc =
    "# FILE NAME: 00001-00000001.soc\n"
    "# TITLE: tiny\n"
    "# DATA TYPE: soc\n"
    "# NUMBER ALTERNATIVES: 3\n"
    "# NUMBER VOTERS: 3\n"
    "# NUMBER UNIQUE ORDERS: 2\n"
    "# ALTERNATIVE NAME 1: a\n"
    "# ALTERNATIVE NAME 2: b\n"
    "# ALTERNATIVE NAME 3: c\n"
    "2: 1,2,3\n"
    "1: 3,2,1\n";

std::vector<std::string> lines_without_comments(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const std::string line = text.substr(start, end - start);
    if (line.rfind('#', 0) != 0) out.push_back(line);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST(Preflib, ParsesSocBody) {
  const auto doc = parse_preflib(kSoc, PreflibType::soc);
  const auto e = doc.to_ordinal();
  EXPECT_EQ(e.num_candidates(), 3);
  EXPECT_EQ(e.num_voters(), 3);
  EXPECT_EQ(e.vote(0), PreferenceOrder({0, 1, 2}));
  EXPECT_EQ(e.vote(1), PreferenceOrder({0, 1, 2}));
  EXPECT_EQ(e.vote(2), PreferenceOrder({2, 1, 0}));
  EXPECT_EQ(doc.alternative_names, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Preflib, DocumentRoundTripIsByteExact) {
  const auto doc = parse_preflib(kSoc);
  EXPECT_EQ(serialize_preflib(doc), kSoc);
}

TEST(Preflib, EmptyVoterSection) {
  const auto doc = parse_preflib("# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 4\n# NUMBER VOTERS: 0\n");
  EXPECT_EQ(doc.to_ordinal().num_voters(), 0);
  EXPECT_EQ(doc.to_ordinal().num_candidates(), 4);
}

TEST(Preflib, IdentityAggregates) {
  OrdinalElection e(2, {PreferenceOrder::identity(2), PreferenceOrder::identity(2)});
  EXPECT_EQ(lines_without_comments(serialize_preflib(e)), (std::vector<std::string>{"2: 1,2"}));
}

TEST(Preflib, AntagonismTwoLines) {
  const auto an = reference_election(ReferenceKind::antagonism, 3, 4);
  EXPECT_EQ(lines_without_comments(serialize_preflib(an)), (std::vector<std::string>{"2: 1,2,3", "2: 3,2,1"}));
}

TEST(Preflib, SampledRoundTrip) {
  for (Seed s = 0; s < 20; ++s) {
    const auto e = sample_mallows(6, 40, MallowsSpec{std::nullopt, NormPhi{0.3}}, s);
    const std::string text = serialize_preflib(e);
    const auto back = parse_preflib(text, PreflibType::soc);
    EXPECT_EQ(back.to_ordinal(), e);
    EXPECT_EQ(serialize_preflib(back), text);
  }
}

TEST(Preflib, ApprovalAsToi) {
  ApprovalElection a(3, {ApprovalBallot({0, 2}), ApprovalBallot{}});
  const std::string text = serialize_preflib(a);
  EXPECT_NE(text.find("# DATA TYPE: toi"), std::string::npos);
  EXPECT_EQ(lines_without_comments(text), (std::vector<std::string>{"1: {1,3}", "1: {}"}));
  EXPECT_EQ(parse_preflib(text).to_approval(), a);
}

TEST(Preflib, TiesAndPartialOrders) {
  const auto doc = parse_preflib(
      "# DATA TYPE: toi\n# NUMBER ALTERNATIVES: 4\n# NUMBER VOTERS: 2\n1: 2,{1,3}\n1: 4\n");
  ASSERT_EQ(doc.votes.size(), 2u);
  EXPECT_EQ(doc.votes[0], (TiedRanking{{1}, {0, 2}}));
  EXPECT_EQ(doc.votes[1], (TiedRanking{{3}}));
  EXPECT_THROW(doc.to_ordinal(), std::invalid_argument);
}

TEST(Preflib, Errors) {
  const std::string header = "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 1\n";
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_preflib(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of(header + "1: 1,2,4\n"), 4u);   // out of range
  EXPECT_EQ(line_of(header + "1: 1,2\n"), 4u);     // incomplete
  EXPECT_EQ(line_of(header + "1: 1,1,2\n"), 4u);   // repeated
  EXPECT_EQ(line_of(header + "2: 1,2,3\n"), 4u);   // too many voters
  EXPECT_GT(line_of(header), 0u);                  // too few voters
  EXPECT_EQ(line_of("# NUMBER ALTERNATIVES: x\n"), 1u);
  EXPECT_GT(line_of("# DATA TYPE: soc\n1: 1\n"), 0u);
  EXPECT_THROW(parse_preflib(header + "1: 1,2,3\n", PreflibType::toi), ParseError);
}

TEST(Pabulib, MinimalFile) {
  const auto f = parse_pabulib(
      "META\nkey;value\nnum_projects;2\nnum_votes;1\nbudget;10\n"
      "PROJECTS\nproject_id;cost\n7;4\n9;6\n"
      "VOTES\nvoter_id;vote\n1;7,9\n");
  EXPECT_EQ(f.election.num_candidates(), 2);
  EXPECT_EQ(f.election.num_voters(), 1);
  EXPECT_EQ(f.election.ballot(0), ApprovalBallot({0, 1}));
  EXPECT_EQ(f.metadata.project_ids(), (std::vector<std::string>{"7", "9"}));
}

TEST(Pabulib, EmptyVoteField) {
  const auto f = parse_pabulib(
      "META\nkey;value\nnum_projects;2\nPROJECTS\nproject_id;cost\n1;1\n2;1\nVOTES\nvoter_id;vote\n1;\n2\n");
  ASSERT_EQ(f.election.num_voters(), 2);
  EXPECT_TRUE(f.election.ballot(0).empty());
  EXPECT_TRUE(f.election.ballot(1).empty());
}

TEST(Pabulib, Errors) {
  EXPECT_THROW(parse_pabulib("PROJECTS\nproject_id;cost\n1;1\nVOTES\nvoter_id;vote\n"), ParseError);
  EXPECT_THROW(parse_pabulib("META\nkey;value\nVOTES\nvoter_id;vote\n"), ParseError);
  EXPECT_THROW(parse_pabulib("META\nkey;value\nPROJECTS\nproject_id;cost\n1;1\nVOTES\nvoter_id;vote\n1;2\n"),
               ParseError);
  EXPECT_THROW(parse_pabulib("META\nkey;value\nPROJECTS\nproject_id;cost\n1;1\n1;2\nVOTES\nvoter_id;vote\n"),
               ParseError);
}

TEST(Pabulib, RoundTripKeepsMetadata) {
  const std::string text =
      "META\nkey;value\ndescription;\"a;b\"\nnum_projects;2\nnum_votes;2\nbudget;10\n"
      "PROJECTS\nproject_id;cost;name\nx;4;park\ny;6;road\n"
      "VOTES\nvoter_id;age;vote\n10;31;x,y\n11;;y\n";
  const auto f = parse_pabulib(text);
  const std::string again = serialize_pabulib(f.election, f.metadata);
  const auto g = parse_pabulib(again);
  EXPECT_EQ(g.election, f.election);
  EXPECT_EQ(g.metadata.meta, f.metadata.meta);
  EXPECT_EQ(g.metadata.projects, f.metadata.projects);
  EXPECT_EQ(serialize_pabulib(g.election, g.metadata), again);
}

TEST(Pabulib, SampledRoundTrip) {
  for (Seed s = 0; s < 20; ++s) {
    const auto e = sample_p_ic(12, 30, 0.3, s);
    const std::string text = serialize_pabulib(e);
    const auto back = parse_pabulib(text);
    EXPECT_EQ(back.election, e);
    EXPECT_EQ(serialize_pabulib(back.election, back.metadata), text);
  }
}
