#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prefforge/approval_cultures.hpp"

using namespace prefforge;
using oracle::Ballot;

namespace {

std::map<Ballot, int> count_ballots(const ApprovalElection& e) {
  std::map<Ballot, int> c;
  for (const auto& b : e.ballots()) ++c[oracle::to_ballot(b)];
  return c;
}

double mean_size(const ApprovalElection& e) {
  double s = 0;
  for (const auto& b : e.ballots()) s += b.size();
  return s / e.num_voters();
}

std::map<Ballot, double> p_ic_pmf(int m, double p) {
  std::map<Ballot, double> out;
  for (const auto& b : oracle::all_ballots(m)) {
    out[b] = std::pow(p, b.size()) * std::pow(1 - p, m - static_cast<int>(b.size()));
  }
  return out;
}

// Enumerates all 2^m ballots with weight phi^d(u, v).
std::map<Ballot, double> noise_pmf(const Ballot& u, int m, double phi, BallotMetric metric) {
  std::map<Ballot, double> out;
  double z = 0;
  for (const auto& v : oracle::all_ballots(m)) {
    const double d = metric == BallotMetric::hamming ? oracle::hamming(u, v) : oracle::jaccard(u, v);
    out[v] = std::pow(phi, d);
    z += out[v];
  }
  for (auto& [b, w] : out) w /= z;
  return out;
}

Ballot central_of(int m, double p, Seed seed) {
  Rng setup(seed, kSetupStream);
  return oracle::to_ballot(sample_central_ballot(m, p, setup));
}

}  // namespace

TEST(PIc, Extremes) {
  for (const auto el = sample_p_ic(5, 20, 0.0, 1); const auto& b : el.ballots()) EXPECT_TRUE(b.empty());
  for (const auto el = sample_p_ic(5, 20, 1.0, 1); const auto& b : el.ballots()) EXPECT_EQ(b.size(), 5);
  EXPECT_THROW(sample_p_ic(3, 3, 1.5, 0), std::invalid_argument);
}

TEST(PIc, MeanSize) {
  EXPECT_NEAR(mean_size(sample_p_ic(20, 100000, 0.15, 2)), 3.0, 0.03);
}

TEST(PIc, UniformAtHalf) {
  const auto e = sample_p_ic(3, 50000, 0.5, 3);
  EXPECT_LE(oracle::total_variation(oracle::uniform_over(oracle::all_ballots(3)), count_ballots(e)), 0.02);
}

TEST(PIc, PerVoterProbability) {
  // Ballot size is uniform on 0..m when p is uniform on [0, 1].
  const auto e = sample_p_ic_per_voter(4, 50000, 4);
  std::map<int, int> sizes;
  for (const auto& b : e.ballots()) ++sizes[b.size()];
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(sizes[k] / 50000.0, 0.2, 0.01);
}

TEST(Resampling, CentralSize) {
  EXPECT_EQ(central_ballot_size(10, 0.5), 5);
  EXPECT_EQ(central_ballot_size(100, 0.57), 57);
  EXPECT_EQ(central_ballot_size(7, 0.5), 3);
  EXPECT_EQ(central_ballot_size(7, 1.0), 7);
}

TEST(Resampling, PhiZeroCopiesCentral) {
  const auto e = sample_resampling(10, 50, {0.3, 0.0}, 5);
  const Ballot u = central_of(10, 0.3, 5);
  EXPECT_EQ(u.size(), 3u);
  for (const auto& b : e.ballots()) EXPECT_EQ(oracle::to_ballot(b), u);
}

TEST(Resampling, PhiOneIsPIc) {
  const auto e = sample_resampling(4, 50000, {0.3, 1.0}, 6);
  EXPECT_LE(oracle::total_variation(p_ic_pmf(4, 0.3), count_ballots(e)), 0.02);
}

TEST(Resampling, MeanSizeIsKept) {
  for (double phi : {0.25, 0.5, 1.0}) {
    EXPECT_NEAR(mean_size(sample_resampling(10, 50000, {0.5, phi}, 7)), 5.0, 0.05) << phi;
  }
}

TEST(Resampling, RecommendedRange) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto spec = draw_resampling_spec(kRecommendedResampling, rng);
    EXPECT_GE(spec.p, 0.0);
    EXPECT_LE(spec.p, 0.25);
    EXPECT_GE(spec.phi, 0.5);
    EXPECT_LE(spec.phi, 1.0);
  }
}

TEST(Noise, MatchesEnumeration) {
  for (auto metric : {BallotMetric::hamming, BallotMetric::jaccard}) {
    for (double phi : {0.2, 0.5, 0.9}) {
      const Seed seed = 11;
      const auto e = sample_noise(4, 50000, {0.5, phi, metric}, seed);
      const Ballot u = central_of(4, 0.5, seed);
      ASSERT_EQ(u.size(), 2u);
      EXPECT_LE(oracle::total_variation(noise_pmf(u, 4, phi, metric), count_ballots(e)), 0.02)
          << (metric == BallotMetric::hamming ? "hamming " : "jaccard ") << phi;
    }
  }
}

TEST(Noise, PhiZeroAndOne) {
  const Seed seed = 12;
  const Ballot u = central_of(6, 0.5, seed);
  for (auto metric : {BallotMetric::hamming, BallotMetric::jaccard}) {
    for (const auto el = sample_noise(6, 100, {0.5, 0.0, metric}, seed); const auto& b : el.ballots()) EXPECT_EQ(oracle::to_ballot(b), u);
  }
  // Flip probability 1/2: 0.5-IC.
  const auto e = sample_noise(3, 50000, {0.5, 1.0, BallotMetric::hamming}, seed);
  EXPECT_LE(oracle::total_variation(p_ic_pmf(3, 0.5), count_ballots(e)), 0.02);
}

TEST(Noise, CentralIsMode) {
  for (auto metric : {BallotMetric::hamming, BallotMetric::jaccard}) {
    const Ballot u{0, 2};
    const auto pmf = noise_pmf(u, 4, 0.7, metric);
    for (const auto& [b, p] : pmf) {
      if (b != u) EXPECT_LT(p, pmf.at(u));
    }
  }
}

TEST(EuclideanApproval, FullBallots) {
  const auto big = sample_euclidean_approval(6, 30, {2, Shape::cube, Shape::cube}, Radius{FixedRadius{1.5}}, 1);
  for (const auto& b : big.election.ballots()) EXPECT_EQ(b.size(), 6);
  const auto all = sample_euclidean_approval(6, 30, {3, Shape::cube, Shape::cube}, TopX{FixedCount{6}}, 1);
  for (const auto& b : all.election.ballots()) EXPECT_EQ(b.size(), 6);
}

TEST(EuclideanApproval, DownwardClosed) {
  for (int rule = 0; rule < 4; ++rule) {
    BallotRule r;
    switch (rule) {
      case 0: r = Radius{FixedRadius{0.3}}; break;
      case 1: r = Radius{UniformRadius{0.1, 0.4}}; break;
      case 2: r = Radius{NearestMultipleRadius{1.5}}; break;
      default: r = TopX{UniformCount{0, 5}}; break;
    }
    const auto s = sample_euclidean_approval(8, 200, {2, Shape::gaussian, Shape::cube}, r, 2);
    for (int v = 0; v < 200; ++v) {
      const auto& b = s.election.ballot(v);
      auto dist = [&](int c) {
        double d = 0;
        for (int k = 0; k < 2; ++k) d += std::pow(s.voters[v][k] - s.candidates[c][k], 2);
        return d;
      };
      for (int c : b) {
        for (int c2 = 0; c2 < 8; ++c2) {
          if (dist(c2) < dist(c)) EXPECT_TRUE(b.contains(c2));
        }
      }
    }
  }
}

TEST(EuclideanApproval, CandidateCentric) {
  const auto s = sample_euclidean_approval(5, 40, {1, Shape::cube, Shape::cube}, CandidateTopX{7}, 3);
  std::vector<int> approvals(5);
  for (const auto& b : s.election.ballots()) {
    for (int c : b) ++approvals[c];
  }
  for (int a : approvals) EXPECT_EQ(a, 7);
}

TEST(EuclideanApproval, Errors) {
  EXPECT_THROW(sample_euclidean_approval(3, 5, {2, Shape::cube, Shape::cube}, TopX{FixedCount{4}}, 0),
               std::invalid_argument);
  EXPECT_THROW(sample_euclidean_approval(3, 5, {2, Shape::cube, Shape::cube}, Radius{FixedRadius{0.0}}, 0),
               std::invalid_argument);
  EXPECT_THROW(sample_euclidean_approval(3, 5, {2, Shape::cube, Shape::cube}, CandidateTopX{6}, 0),
               std::invalid_argument);
}

TEST(EuclideanApproval, RecommendedRadius) {
  EXPECT_DOUBLE_EQ(recommended_radius(1), 0.05);
  EXPECT_DOUBLE_EQ(recommended_radius(2), 0.2);
}

TEST(EuclideanApproval, NormalCountClips) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const int x = resolve_count(NormalCount{2.0, 5.0}, 4, rng);
    EXPECT_GE(x, 0);
    EXPECT_LE(x, 4);
  }
}

TEST(Interval, WitnessesValidate) {
  for (Seed s = 0; s < 20; ++s) {
    const int m = 1 + static_cast<int>(s % 9), n = 1 + static_cast<int>(s * 13 % 60);
    const auto ci = sample_interval(m, n, IntervalKind::candidate_interval, s);
    EXPECT_TRUE(validate_structure(ci.election, ci.witness));
    EXPECT_EQ(property_name(ci.witness), "ci");
    const auto vi = sample_interval(m, n, IntervalKind::voter_interval, s);
    EXPECT_TRUE(validate_structure(vi.election, vi.witness));
    EXPECT_EQ(property_name(vi.witness), "vi");
  }
}

TEST(Interval, SingleVoterBallotIsInterval) {
  for (Seed s = 0; s < 50; ++s) {
    const auto ci = sample_interval(6, 1, IntervalKind::candidate_interval, s);
    const auto axis = std::get<CandidateInterval>(ci.witness).axis;
    const auto pos = axis.positions();
    std::vector<int> at;
    for (int c : ci.election.ballot(0)) at.push_back(pos[c]);
    std::sort(at.begin(), at.end());
    for (std::size_t i = 1; i < at.size(); ++i) EXPECT_EQ(at[i], at[i - 1] + 1);
  }
}

TEST(PartyList, UniformGroups) {
  const auto s = sample_party_list(1300, 200, UniformGroups{}, 1);
  EXPECT_TRUE(is_party_list(s.election));
  std::map<Ballot, int> groups = count_ballots(s.election);
  for (const auto& [b, k] : groups) {
    EXPECT_GE(b.size(), 10u);
    EXPECT_LE(b.size(), 30u);
  }
  EXPECT_TRUE(validate_structure(s.election, CandidateInterval{s.candidate_axis}));
  EXPECT_TRUE(validate_structure(s.election, VoterInterval{s.voter_order}));
  EXPECT_THROW(sample_party_list(20, 200, UniformGroups{}, 1), std::invalid_argument);
}

TEST(PartyList, UrnParties) {
  for (Seed seed = 0; seed < 5; ++seed) {
    const auto s = sample_party_list(11, 50, UrnParties{3, 0.5}, seed);
    EXPECT_TRUE(is_party_list(s.election));
    for (const auto& b : s.election.ballots()) EXPECT_EQ(b.size(), 3);
    EXPECT_TRUE(validate_structure(s.election, CandidateInterval{s.candidate_axis}));
    EXPECT_TRUE(validate_structure(s.election, VoterInterval{s.voter_order}));
  }
  EXPECT_THROW(sample_party_list(3, 5, UrnParties{4, 0.5}, 0), std::invalid_argument);
}

TEST(PartyList, UrnReinforcement) {
  // g = 2, alpha = 1: (1 + 2) / (2 + 2).
  int same = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    const auto s = sample_party_list(4, 2, UrnParties{2, 1.0}, static_cast<Seed>(t));
    same += s.election.ballot(0) == s.election.ballot(1);
  }
  EXPECT_NEAR(same / static_cast<double>(trials), 0.75, 0.01);

  // alpha = 0: parties i.i.d. uniform.
  same = 0;
  for (int t = 0; t < trials; ++t) {
    const auto s = sample_party_list(4, 2, UrnParties{2, 0.0}, static_cast<Seed>(t));
    same += s.election.ballot(0) == s.election.ballot(1);
  }
  EXPECT_NEAR(same / static_cast<double>(trials), 0.5, 0.01);
}

TEST(PartyList, Detector) {
  EXPECT_TRUE(is_party_list(ApprovalElection(4, {ApprovalBallot({0, 1}), ApprovalBallot({2}), ApprovalBallot({0, 1})})));
  EXPECT_FALSE(is_party_list(ApprovalElection(4, {ApprovalBallot({0, 1}), ApprovalBallot({1, 2})})));
}

TEST(Truncation, Basics) {
  const auto e = sample_impartial(6, 100, 1);
  for (const auto el = truncate_to_approval(e, FixedCount{6}, 1); const auto& b : el.ballots()) EXPECT_EQ(b.size(), 6);
  const auto top = truncate_to_approval(e, FixedCount{1}, 1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(top.ballot(i), ApprovalBallot({e.vote(i)[0]}));

  const PreferenceOrder central({4, 2, 0, 1, 3, 5});
  const auto point = sample_mallows(6, 50, MallowsSpec{central, Phi{0.0}}, 2);
  for (const auto el = truncate_to_approval(point, FixedCount{3}, 2); const auto& b : el.ballots()) {
    EXPECT_EQ(b, ApprovalBallot({4, 2, 0}));
  }
  const auto uni = truncate_to_approval(e, UniformCount{1, 3}, 3);
  for (const auto& b : uni.ballots()) {
    EXPECT_GE(b.size(), 1);
    EXPECT_LE(b.size(), 3);
  }
}
