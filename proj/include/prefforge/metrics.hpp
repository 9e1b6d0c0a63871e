#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "prefforge/approval_cultures.hpp"
#include "prefforge/election.hpp"
#include "prefforge/rng.hpp"

namespace prefforge {

// Symmetric, nonnegative, zero-diagonal k x k matrix.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), entries_(size * size, 0.0) {}
  // Row-major entries; throws std::invalid_argument if not a distance matrix.
  DistanceMatrix(std::size_t size, std::vector<double> entries);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);
  std::span<const double> entries() const { return entries_; }

 private:
  std::size_t size_ = 0;
  std::vector<double> entries_;
};

// Kendall tau: pairs of candidates the two orders rank differently.
// O(m log m) by inversion counting. Throws on length mismatch.
std::int64_t swap_distance(const PreferenceOrder& u, const PreferenceOrder& v);

// Hamming: |u xor v|. Jaccard: 1 - |u and v| / |u or v|, 0 when both empty.
double ballot_distance(const ApprovalBallot& u, const ApprovalBallot& v, BallotMetric metric);

struct VoteDistances {
  DistanceMatrix distances;
  std::vector<PreferenceOrder> votes;      // row i of the matrix
  std::vector<std::size_t> multiplicities;  // copies of votes[i] in the election
};

// Pairwise swap distances. With `deduplicate`, identical votes collapse to
// one row (first-appearance order) and are counted in `multiplicities`.
VoteDistances vote_distance_matrix(const OrdinalElection& e, bool deduplicate);

// ---- Isomorphic swap distance --------------------------------------------

// Optimal assignment for a square cost matrix (row-major, size x size).
struct Assignment {
  std::int64_t cost = 0;
  std::vector<int> column_of_row;
};
Assignment min_cost_assignment(std::span<const std::int64_t> cost, std::size_t size);

struct ExactDistanceOptions {
  // Allow m > 8; the search is over m! candidate relabelings.
  bool allow_large = false;
};

// min over candidate relabelings and voter bijections of the summed swap
// distances between matched votes. Requires equal m and n.
std::int64_t election_distance_exact(const OrdinalElection& a, const OrdinalElection& b,
                                     const ExactDistanceOptions& options = {});

// An upper bound on election_distance_exact from multi-restart transposition
// descent over candidate relabelings (each evaluated with an optimal voter
// matching). Restart 0 starts from the identity relabeling.
struct HeuristicDistance {
  std::int64_t value = 0;
  bool upper_bound = true;
  std::vector<Candidate> relabeling;  // best candidate map found, a -> b
};
HeuristicDistance election_distance_heuristic(const OrdinalElection& a, const OrdinalElection& b, int restarts,
                                              Seed seed);

// Summed swap distance for a fixed candidate relabeling (a's candidate c is
// treated as b's candidate relabeling[c]) under the best voter matching.
std::int64_t matched_swap_cost(const OrdinalElection& a, const OrdinalElection& b,
                               std::span<const Candidate> relabeling);

}  // namespace prefforge
