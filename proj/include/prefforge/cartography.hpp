#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefforge/election.hpp"
#include "prefforge/metrics.hpp"
#include "prefforge/rng.hpp"

namespace prefforge {

struct MdsConfig {
  int max_iter = 1000;
  double rel_tol = 1e-6;
  Seed seed = 0;
  // Independent random starts; the lowest final stress wins.
  int n_init = 4;
};

struct Embedding {
  int dims = 2;
  std::vector<std::vector<double>> coords;  // k points, centred at the origin
  double stress = 0.0;                      // sum_{i<j} (D_ij - |x_i - x_j|)^2
  double kruskal_stress1 = 0.0;             // sqrt(stress / sum_{i<j} |x_i - x_j|^2)
  std::vector<double> stress_history;       // initial stress, then one entry per iteration
  int iterations = 0;
  std::vector<std::string> labels;
  std::vector<double> radii;
  std::vector<std::size_t> multiplicities;

  std::size_t size() const { return coords.size(); }
};

// SMACOF with unit weights. Throws std::invalid_argument if dims < 1.
Embedding mds_embed(const DistanceMatrix& d, int dims = 2, const MdsConfig& config = {});

// Stress of fixed coordinates against d.
double raw_stress(const DistanceMatrix& d, const std::vector<std::vector<double>>& coords);

inline constexpr int kMicroscopeCandidates = 10;
inline constexpr int kMicroscopeVoters = 1000;
inline constexpr int kMapCandidates = 8;
inline constexpr int kMapVoters = 96;

// One disc per distinct vote, radius sqrt(multiplicity).
Embedding microscope_layout(const OrdinalElection& e, int dims = 2, const MdsConfig& config = {});

struct LabeledElection {
  std::string label;
  OrdinalElection election;
};

enum class DistanceMethod { exact, heuristic };

struct MapConfig {
  DistanceMethod distance = DistanceMethod::heuristic;
  int restarts = 20;
  Seed seed = 0;
  MdsConfig mds;
  int dims = 2;
  int threads = 0;  // 0: hardware concurrency
  bool include_references = true;
  bool allow_large_exact = false;
};

struct ElectionMap {
  Embedding embedding;
  DistanceMatrix distances;
  bool distances_are_upper_bounds = false;
};

// Pairwise isomorphic swap distances, then MDS. With include_references the
// labels "ID", "AN", "UN" are appended (an empty list then maps the references
// alone at the default 8 x 96). Throws on mixed sizes or on nothing to map.
ElectionMap map_layout(std::vector<LabeledElection> elections, const MapConfig& config = {});

// Pairwise distance matrix only; pair (i, j) uses a seed derived from
// (seed, i, j) so the result does not depend on the thread count.
DistanceMatrix election_distance_matrix(const std::vector<LabeledElection>& elections, const MapConfig& config,
                                        bool* upper_bounds = nullptr);

// label,x,y,radius (x0..x{d-1} when dims != 2).
void write_csv(std::ostream& out, const Embedding& e);
std::string to_json(const Embedding& e);
std::string to_json(const ElectionMap& m);

}  // namespace prefforge
