#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "prefforge/election.hpp"
#include "prefforge/rng.hpp"

namespace prefforge {

// Every sampler is a pure function of its arguments. Vote i is drawn from
// the stream Rng(seed, i + 1); anything shared by all votes (axis, tree,
// central order, candidate points) comes from Rng(seed, 0).
inline constexpr std::uint64_t kSetupStream = 0;
inline std::uint64_t vote_stream(int voter) { return static_cast<std::uint64_t>(voter) + 1; }

OrdinalElection sample_impartial(int m, int n, Seed seed);

// ---- Urn ------------------------------------------------------------------

struct GammaContagion {
  double shape = 0.8;
  double scale = 1.0;
};

// Normalized Polya-Eggenberger contagion: after each draw, alpha * m!
// copies of the drawn order go back into the urn.
struct UrnSpec {
  std::variant<double, GammaContagion> alpha = 0.0;

  static UrnSpec fixed(double a) { return {a}; }
  static UrnSpec gamma(double shape = 0.8, double scale = 1.0) { return {GammaContagion{shape, scale}}; }
};

// The alpha actually used for this seed (draws it for gamma contagion).
double resolve_urn_alpha(const UrnSpec& spec, Seed seed);

// Throws std::invalid_argument for negative alpha or non-positive gamma
// parameters.
OrdinalElection sample_urn(int m, int n, const UrnSpec& spec, Seed seed);

// ---- Mallows --------------------------------------------------------------

struct Phi {
  double value = 1.0;
};
struct NormPhi {
  double value = 1.0;
};
using Dispersion = std::variant<Phi, NormPhi>;

struct MallowsSpec {
  std::optional<PreferenceOrder> central;  // identity when absent
  Dispersion dispersion = Phi{1.0};
};

struct MallowsMixtureSpec {
  std::vector<std::pair<double, MallowsSpec>> components;  // (weight, model)
  // false: each vote draws its component by weight. true: component sizes
  // are the weights times n (largest remainder), assigned in order.
  bool exact_split = false;
};

// Expected swap distance to the central order under Mallows(phi).
double mallows_expected_swap_distance(int m, double phi);

// phi whose expected swap distance is norm_phi * m(m-1)/4. Requires m >= 2.
double phi_from_norm_phi(int m, double norm_phi);

double resolve_phi(int m, const Dispersion& d);

// Repeated insertion: the j-th candidate of the central order lands i places
// above the bottom of the partial ranking with probability proportional to
// phi^i.
PreferenceOrder sample_mallows_vote(const PreferenceOrder& central, double phi, Rng& rng);

OrdinalElection sample_mallows(int m, int n, const MallowsSpec& spec, Seed seed);
OrdinalElection sample_mallows(int m, int n, const MallowsMixtureSpec& spec, Seed seed);

// Voters split evenly between two models with equal dispersion and opposite
// central orders.
MallowsMixtureSpec balanced_two_mallows(int m, Dispersion dispersion);

// ---- Euclidean ------------------------------------------------------------

enum class Shape {
  cube,      // uniform on [0,1]^d
  sphere,    // uniform on the sphere of radius 1/2 centred at (1/2,...,1/2)
  gaussian,  // N(1/2, 1/4^2) per coordinate
};

struct SpaceSpec {
  int dimension = 2;
  Shape voter_shape = Shape::cube;
  Shape candidate_shape = Shape::cube;
};

using Point = std::vector<double>;

std::vector<Point> sample_points(int count, int dimension, Shape shape, Rng& rng);
Point sample_point(int dimension, Shape shape, Rng& rng);

// Candidates by increasing distance from `voter`; ties go to the lower index.
PreferenceOrder rank_by_distance(const Point& voter, const std::vector<Point>& candidates);

struct EuclideanOrdinalSample {
  OrdinalElection election;
  std::vector<Point> voters;
  std::vector<Point> candidates;
};

EuclideanOrdinalSample sample_euclidean_ordinal(int m, int n, const SpaceSpec& space, Seed seed);

// ---- Structured domains ---------------------------------------------------

struct StructuredSample {
  OrdinalElection election;
  StructureWitness witness;
};

// Uniform over votes single-peaked on a uniformly drawn axis.
StructuredSample sample_walsh_sp(int m, int n, Seed seed);
// Uniform top choice, then a fair coin picks the left or right neighbour.
StructuredSample sample_conitzer_sp(int m, int n, Seed seed);
// Conitzer construction on a cyclic axis; uniform over SPOC votes.
StructuredSample sample_spoc(int m, int n, Seed seed);

// The m(m-1)/2 + 1 orders visited by walking from `start` to its reverse,
// each step swapping a uniformly chosen adjacent pair that has not been
// swapped before.
std::vector<PreferenceOrder> single_crossing_path(const PreferenceOrder& start, Rng& rng);
// Votes are uniformly drawn points on such a path, sorted along it; the
// witness is the identity voter order.
StructuredSample sample_single_crossing(int m, int n, Seed seed);

StructuredSample sample_group_separable(int m, int n, TreeKind kind, Seed seed);

// ---- Reference elections --------------------------------------------------

enum class ReferenceKind { identity, antagonism, uniformity };

// ID: n copies of 0..m-1. AN: ceil(n/2) identity votes then floor(n/2)
// reversed. UN: every permutation floor(n/m!) times plus distinct random
// ones for the remainder (n < m! gives n distinct random permutations).
OrdinalElection reference_election(ReferenceKind kind, int m, int n, Seed seed = 0);

}  // namespace prefforge
