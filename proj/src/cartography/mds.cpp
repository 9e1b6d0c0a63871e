#include <cmath>
#include <limits>
#include <stdexcept>

#include "prefforge/cartography.hpp"

namespace prefforge {

namespace {

using Coords = std::vector<std::vector<double>>;

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(s);
}

void centre(Coords& x) {
  if (x.empty()) return;
  const std::size_t dims = x[0].size();
  for (std::size_t t = 0; t < dims; ++t) {
    double mean = 0.0;
    for (const auto& p : x) mean += p[t];
    mean /= static_cast<double>(x.size());
    for (auto& p : x) p[t] -= mean;
  }
}

// X <- (1/k) B(X) X
Coords guttman(const DistanceMatrix& d, const Coords& x) {
  const std::size_t k = x.size();
  const std::size_t dims = x[0].size();
  Coords out(k, std::vector<double>(dims, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const double dij = dist(x[i], x[j]);
      if (dij <= 0.0) continue;
      const double b = -d(i, j) / dij;
      diag -= b;
      for (std::size_t t = 0; t < dims; ++t) out[i][t] += b * x[j][t];
    }
    for (std::size_t t = 0; t < dims; ++t) out[i][t] += diag * x[i][t];
  }
  const double inv = 1.0 / static_cast<double>(k);
  for (auto& p : out) {
    for (auto& v : p) v *= inv;
  }
  return out;
}

struct Run {
  Coords coords;
  std::vector<double> history;
  int iterations = 0;
};

Run smacof(const DistanceMatrix& d, int dims, const MdsConfig& config, std::uint64_t start, double floor) {
  const std::size_t k = d.size();
  Rng rng(config.seed, start);
  Run run;
  run.coords.assign(k, std::vector<double>(static_cast<std::size_t>(dims)));
  for (auto& p : run.coords) {
    for (auto& v : p) v = rng.uniform();
  }
  centre(run.coords);
  double prev = raw_stress(d, run.coords);
  run.history.push_back(prev);
  while (run.iterations < config.max_iter && prev > floor) {
    Coords next = guttman(d, run.coords);
    const double cur = raw_stress(d, next);
    ++run.iterations;
    run.history.push_back(cur);
    run.coords = std::move(next);
    const bool stalled = prev - cur < config.rel_tol * prev;
    prev = cur;
    if (stalled) break;
  }
  centre(run.coords);
  return run;
}

}  // namespace

double raw_stress(const DistanceMatrix& d, const std::vector<std::vector<double>>& coords) {
  if (coords.size() != d.size()) throw std::invalid_argument("raw_stress: point count differs from matrix size");
  double s = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      const double r = d(i, j) - dist(coords[i], coords[j]);
      s += r * r;
    }
  }
  return s;
}

Embedding mds_embed(const DistanceMatrix& d, int dims, const MdsConfig& config) {
  if (dims < 1) throw std::invalid_argument("mds_embed: dims must be at least 1");
  if (config.max_iter < 0) throw std::invalid_argument("mds_embed: max_iter must be nonnegative");
  if (!(config.rel_tol >= 0.0)) throw std::invalid_argument("mds_embed: rel_tol must be nonnegative");
  const std::size_t k = d.size();
  Embedding out;
  out.dims = dims;
  out.coords.assign(k, std::vector<double>(static_cast<std::size_t>(dims), 0.0));

  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) total += d(i, j) * d(i, j);
  }
  if (k < 2 || total == 0.0) {
    out.stress_history.push_back(0.0);
    return out;
  }

  // Below this the stress is roundoff.
  const double floor = total * 1e-24;
  Run best;
  double best_stress = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(config.n_init, 1); ++s) {
    Run run = smacof(d, dims, config, static_cast<std::uint64_t>(s), floor);
    if (run.history.back() < best_stress) {
      best_stress = run.history.back();
      best = std::move(run);
    }
  }
  out.coords = std::move(best.coords);
  out.stress_history = std::move(best.history);
  out.iterations = best.iterations;
  out.stress = raw_stress(d, out.coords);

  double fitted = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double e = dist(out.coords[i], out.coords[j]);
      fitted += e * e;
    }
  }
  out.kruskal_stress1 = fitted > 0.0 ? std::sqrt(out.stress / fitted) : 0.0;
  return out;
}

}  // namespace prefforge
