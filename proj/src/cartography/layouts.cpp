#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "prefforge/cartography.hpp"
#include "prefforge/ordinal_cultures.hpp"

namespace prefforge {

namespace {

Seed pair_seed(Seed seed, std::size_t i, std::size_t j) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j)));
}

nlohmann::json embedding_json(const Embedding& e) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    nlohmann::json p;
    p["label"] = i < e.labels.size() ? e.labels[i] : std::to_string(i);
    p["coords"] = e.coords[i];
    p["radius"] = i < e.radii.size() ? e.radii[i] : 1.0;
    if (i < e.multiplicities.size()) p["multiplicity"] = e.multiplicities[i];
    points.push_back(std::move(p));
  }
  nlohmann::json j;
  j["dims"] = e.dims;
  j["stress"] = e.stress;
  j["kruskal_stress1"] = e.kruskal_stress1;
  j["iterations"] = e.iterations;
  j["points"] = std::move(points);
  return j;
}

}  // namespace

Embedding microscope_layout(const OrdinalElection& e, int dims, const MdsConfig& config) {
  if (e.num_voters() < 1) throw std::invalid_argument("microscope_layout: election has no voters");
  VoteDistances vd = vote_distance_matrix(e, true);
  Embedding out = mds_embed(vd.distances, dims, config);
  for (std::size_t i = 0; i < vd.votes.size(); ++i) {
    out.labels.push_back(vd.votes[i].to_string());
    out.radii.push_back(std::sqrt(static_cast<double>(vd.multiplicities[i])));
  }
  out.multiplicities = std::move(vd.multiplicities);
  return out;
}

DistanceMatrix election_distance_matrix(const std::vector<LabeledElection>& elections, const MapConfig& config,
                                        bool* upper_bounds) {
  const std::size_t k = elections.size();
  for (const auto& le : elections) {
    if (le.election.num_candidates() != elections[0].election.num_candidates() ||
        le.election.num_voters() != elections[0].election.num_voters()) {
      throw std::invalid_argument("map: all elections must have the same number of candidates and voters ('" +
                                  le.label + "' differs from '" + elections[0].label + "')");
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t p = next++; p < pairs.size(); p = next++) {
      const auto [i, j] = pairs[p];
      try {
        const auto& a = elections[i].election;
        const auto& b = elections[j].election;
        if (config.distance == DistanceMethod::exact) {
          values[p] = static_cast<double>(election_distance_exact(a, b, {config.allow_large_exact}));
        } else {
          values[p] = static_cast<double>(
              election_distance_heuristic(a, b, config.restarts, pair_seed(config.seed, i, j)).value);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = pairs.size();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(pairs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  DistanceMatrix d(k);
  for (std::size_t p = 0; p < pairs.size(); ++p) d.set(pairs[p].first, pairs[p].second, values[p]);
  if (upper_bounds) *upper_bounds = config.distance == DistanceMethod::heuristic;
  return d;
}

ElectionMap map_layout(std::vector<LabeledElection> elections, const MapConfig& config) {
  if (elections.empty() && !config.include_references) throw std::invalid_argument("map: no elections");
  int m = kMapCandidates, n = kMapVoters;
  if (!elections.empty()) {
    m = elections[0].election.num_candidates();
    n = elections[0].election.num_voters();
  }
  if (config.include_references) {
    elections.push_back({"ID", reference_election(ReferenceKind::identity, m, n)});
    elections.push_back({"AN", reference_election(ReferenceKind::antagonism, m, n)});
    elections.push_back({"UN", reference_election(ReferenceKind::uniformity, m, n, config.seed)});
  }
  ElectionMap out;
  out.distances = election_distance_matrix(elections, config, &out.distances_are_upper_bounds);
  MdsConfig mds = config.mds;
  out.embedding = mds_embed(out.distances, config.dims, mds);
  for (auto& le : elections) {
    out.embedding.labels.push_back(le.label);
    out.embedding.radii.push_back(1.0);
  }
  return out;
}

void write_csv(std::ostream& out, const Embedding& e) {
  out << "label";
  if (e.dims == 2) {
    out << ",x,y";
  } else {
    for (int t = 0; t < e.dims; ++t) out << ",x" << t;
  }
  out << ",radius\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::string label = i < e.labels.size() ? e.labels[i] : std::to_string(i);
    if (label.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : label) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      label = quoted + "\"";
    }
    out << label;
    for (double v : e.coords[i]) out << ',' << v;
    out << ',' << (i < e.radii.size() ? e.radii[i] : 1.0) << '\n';
  }
  out.precision(old_precision);
}

std::string to_json(const Embedding& e) { return embedding_json(e).dump(2); }

std::string to_json(const ElectionMap& m) {
  nlohmann::json j = embedding_json(m.embedding);
  j["distance_kind"] = m.distances_are_upper_bounds ? "heuristic_upper_bound" : "exact";
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.distances.size(); ++i) {
    std::vector<double> row;
    for (std::size_t c = 0; c < m.distances.size(); ++c) row.push_back(m.distances(i, c));
    rows.push_back(row);
  }
  j["distances"] = std::move(rows);
  return j.dump(2);
}

}  // namespace prefforge
