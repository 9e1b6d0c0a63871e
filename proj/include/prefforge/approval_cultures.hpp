#pragma once

#include <variant>
#include <vector>

#include "prefforge/election.hpp"
#include "prefforge/ordinal_cultures.hpp"
#include "prefforge/rng.hpp"

namespace prefforge {

enum class BallotMetric { hamming, jaccard };

// ---- Impartial culture ----------------------------------------------------

// Every (voter, candidate) approval is an independent Bernoulli(p).
ApprovalElection sample_p_ic(int m, int n, double p, Seed seed);
// Each voter first draws an individual approval probability uniformly from
// [0, 1], then approves every candidate independently with it.
ApprovalElection sample_p_ic_per_voter(int m, int n, Seed seed);

// ---- Resampling and noise -------------------------------------------------

struct ResamplingSpec {
  double p = 0.5;
  double phi = 0.5;
};

struct NoiseSpec {
  double p = 0.5;
  double phi = 0.5;
  BallotMetric metric = BallotMetric::hamming;
};

// floor(p*m) candidates chosen uniformly; shared by resampling and noise.
ApprovalBallot sample_central_ballot(int m, double p, Rng& rng);
int central_ballot_size(int m, double p);

ApprovalElection sample_resampling(int m, int n, const ResamplingSpec& spec, Seed seed);

// Parameter ranges usually recommended for resampling.
struct ResamplingRange {
  double p_min = 0.0;
  double p_max = 0.25;
  double phi_min = 0.5;
  double phi_max = 1.0;
};
inline constexpr ResamplingRange kRecommendedResampling{};
// (p, phi) uniform over the range.
ResamplingSpec draw_resampling_spec(const ResamplingRange& range, Rng& rng);

// Ballot v drawn with probability proportional to phi^d(u, v) around a
// central ballot u. Hamming factorizes per candidate; Jaccard is sampled
// exactly through the (|u and v|, |v minus u|) count pairs.
ApprovalElection sample_noise(int m, int n, const NoiseSpec& spec, Seed seed);
ApprovalBallot sample_noise_ballot(const ApprovalBallot& central, int m, double phi, BallotMetric metric,
                                   Rng& rng);

// ---- Euclidean ------------------------------------------------------------

struct FixedCount {
  int x = 1;
};
struct UniformCount {
  int lo = 1;
  int hi = 1;
};
// round(N(mean, sd)), clipped to [0, m].
struct NormalCount {
  double mean = 1.0;
  double sd = 1.0;
};
using CountRule = std::variant<FixedCount, UniformCount, NormalCount>;

struct FixedRadius {
  double r = 0.2;
};
struct UniformRadius {
  double lo = 0.1;
  double hi = 0.3;
};
// r = factor * (distance to the voter's nearest candidate).
struct NearestMultipleRadius {
  double factor = 1.5;
};
using RadiusRule = std::variant<FixedRadius, UniformRadius, NearestMultipleRadius>;

struct TopX {
  CountRule count;
};
struct Radius {
  RadiusRule radius;
};
// Each candidate is approved by its x nearest voters.
struct CandidateTopX {
  int x = 1;
};
using BallotRule = std::variant<TopX, Radius, CandidateTopX>;

// Radii commonly used in the literature: 0.05 in 1D, 0.2 in 2D.
double recommended_radius(int dimension);

int resolve_count(const CountRule& rule, int m, Rng& rng);

struct EuclideanApprovalSample {
  ApprovalElection election;
  std::vector<Point> voters;
  std::vector<Point> candidates;
};

// Throws std::invalid_argument for x > m (x > n for CandidateTopX) or a
// non-positive radius.
EuclideanApprovalSample sample_euclidean_approval(int m, int n, const SpaceSpec& space, const BallotRule& rule,
                                                  Seed seed);

// ---- Interval domains -----------------------------------------------------

enum class IntervalKind { candidate_interval, voter_interval };

struct StructuredApprovalSample {
  ApprovalElection election;
  StructureWitness witness;
};

// 1D points in [0, 1]. CI: each voter has a radius uniform in (0, 1]. VI:
// each candidate has one and is approved by the voters within it.
StructuredApprovalSample sample_interval(int m, int n, IntervalKind kind, Seed seed);

// ---- Party lists ----------------------------------------------------------

// Voters split at random into groups of group_min..group_max voters; each
// group approves its own party of party_min..party_max fresh candidates.
struct UniformGroups {
  int group_min = 5;
  int group_max = 20;
  int party_min = 10;
  int party_max = 30;
};
// g parties of floor(m/g) candidates; votes drawn from an urn that gets
// alpha*g extra copies of every drawn party ballot.
struct UrnParties {
  int parties = 2;
  double alpha = 0.5;
};
using PartyListSpec = std::variant<UniformGroups, UrnParties>;

struct PartyListSample {
  ApprovalElection election;
  // Party members contiguous on the axis; voters grouped by party.
  Axis candidate_axis;
  Axis voter_order;
};

PartyListSample sample_party_list(int m, int n, const PartyListSpec& spec, Seed seed);

// True iff every two ballots are equal or disjoint.
bool is_party_list(const ApprovalElection& e);

// ---- Truncation -----------------------------------------------------------

// Voter i approves the top x_i candidates of vote i, x_i drawn from `count`
// on stream Rng(seed, i + 1) and clipped to [0, m].
ApprovalElection truncate_to_approval(const OrdinalElection& e, const CountRule& count, Seed seed);

}  // namespace prefforge
