#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "prefforge/ordinal_cultures.hpp"

namespace prefforge {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_sizes(int m, int n, const char* who) {
  require(m >= 1, std::string(who) + ": need m >= 1");
  require(n >= 0, std::string(who) + ": need n >= 0");
}

PreferenceOrder uniform_order(int m, Rng& rng) { return PreferenceOrder(rng.permutation(m)); }

// Expected displacement when inserting into a list of `slots - 1` items.
double expected_insertion_displacement(int slots, double phi) {
  double num = 0.0;
  double den = 0.0;
  double w = 1.0;
  for (int i = 0; i < slots; ++i) {
    num += i * w;
    den += w;
    w *= phi;
  }
  return num / den;
}

std::optional<std::uint64_t> factorial(int m) {
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) {
    if (f > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k)) return std::nullopt;
    f *= static_cast<std::uint64_t>(k);
  }
  return f;
}

// Permutation with the given rank in lexicographic order.
PreferenceOrder unrank_permutation(int m, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(m) + 1, 1);
  for (int k = 1; k <= m; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k) - 1] * static_cast<std::uint64_t>(k);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = m; k >= 1; --k) {
    const std::uint64_t block = fact[static_cast<std::size_t>(k) - 1];
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return PreferenceOrder(std::move(out));
}

std::vector<PreferenceOrder> distinct_random_orders(int m, std::size_t count, Rng& rng) {
  std::vector<PreferenceOrder> out;
  out.reserve(count);
  const auto total = factorial(m);
  if (total && *total <= (1u << 20)) {
    std::vector<std::uint64_t> ranks(*total);
    std::iota(ranks.begin(), ranks.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.below(ranks.size() - i);
      std::swap(ranks[i], ranks[j]);
      out.push_back(unrank_permutation(m, ranks[i]));
    }
    return out;
  }
  std::set<PreferenceOrder> seen;
  while (out.size() < count) {
    PreferenceOrder v = uniform_order(m, rng);
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

void validate_dispersion(const Dispersion& d) {
  const double v = std::visit([](auto x) { return x.value; }, d);
  require(v >= 0.0 && v <= 1.0, "Mallows: dispersion must lie in [0, 1], got " + std::to_string(v));
}

PreferenceOrder central_or_identity(int m, const MallowsSpec& spec) {
  if (!spec.central) return PreferenceOrder::identity(m);
  require(spec.central->size() == m, "Mallows: central order has " + std::to_string(spec.central->size()) +
                                         " candidates, expected " + std::to_string(m));
  return *spec.central;
}

}  // namespace

OrdinalElection sample_impartial(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_impartial");
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    votes.push_back(uniform_order(m, rng));
  }
  return OrdinalElection(m, std::move(votes));
}

double resolve_urn_alpha(const UrnSpec& spec, Seed seed) {
  if (const auto* a = std::get_if<double>(&spec.alpha)) {
    require(*a >= 0.0 && std::isfinite(*a), "urn: alpha must be a nonnegative number");
    return *a;
  }
  const auto& g = std::get<GammaContagion>(spec.alpha);
  require(g.shape > 0.0 && g.scale > 0.0, "urn: gamma shape and scale must be positive");
  Rng rng(seed, kSetupStream);
  return rng.gamma(g.shape, g.scale);
}

OrdinalElection sample_urn(int m, int n, const UrnSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_urn");
  const double alpha = resolve_urn_alpha(spec, seed);
  // After t draws the urn holds m! + t * alpha * m! orders, so the next draw
  // copies a uniformly chosen earlier vote with probability
  // alpha*t / (1 + alpha*t) and is otherwise a fresh uniform order.
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    Rng rng(seed, vote_stream(t));
    const double reinforced = alpha * t;
    if (t > 0 && rng.bernoulli(reinforced / (1.0 + reinforced))) {
      votes.push_back(votes[rng.below(static_cast<std::uint64_t>(t))]);
    } else {
      votes.push_back(uniform_order(m, rng));
    }
  }
  return OrdinalElection(m, std::move(votes));
}

double mallows_expected_swap_distance(int m, double phi) {
  require(phi >= 0.0 && phi <= 1.0, "mallows_expected_swap_distance: phi must lie in [0, 1]");
  // Sum over insertions of sum_i i*phi^i / sum_i phi^i, i = 0..j. This is the
  // closed form phi/(1-phi) - (j+1)phi^(j+1)/(1-phi^(j+1)) evaluated without
  // the cancellation it suffers near phi = 1.
  double total = 0.0;
  for (int j = 1; j < m; ++j) total += expected_insertion_displacement(j + 1, phi);
  return total;
}

double phi_from_norm_phi(int m, double norm_phi) {
  require(m >= 2, "phi_from_norm_phi: need m >= 2");
  require(norm_phi >= 0.0 && norm_phi <= 1.0, "phi_from_norm_phi: norm-phi must lie in [0, 1]");
  if (norm_phi == 0.0) return 0.0;
  if (norm_phi == 1.0) return 1.0;
  const double target = norm_phi * m * (m - 1) / 4.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mallows_expected_swap_distance(m, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double resolve_phi(int m, const Dispersion& d) {
  validate_dispersion(d);
  if (const auto* p = std::get_if<Phi>(&d)) return p->value;
  const double norm = std::get<NormPhi>(d).value;
  if (m < 2) return norm;  // every phi gives the same (single) order
  return phi_from_norm_phi(m, norm);
}

PreferenceOrder sample_mallows_vote(const PreferenceOrder& central, double phi, Rng& rng) {
  const int m = central.size();
  std::vector<Candidate> ranking;
  ranking.reserve(static_cast<std::size_t>(m));
  std::vector<double> weight(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    // j items placed so far; offset i above the bottom creates i inversions.
    double w = 1.0;
    double total = 0.0;
    for (int i = 0; i <= j; ++i) {
      weight[static_cast<std::size_t>(i)] = w;
      total += w;
      w *= phi;
    }
    const double u = rng.uniform() * total;
    int offset = 0;
    double acc = weight[0];
    while (u >= acc && offset < j) {
      ++offset;
      acc += weight[static_cast<std::size_t>(offset)];
    }
    // Guard against landing on a zero-weight slot through rounding.
    while (offset > 0 && weight[static_cast<std::size_t>(offset)] == 0.0) --offset;
    ranking.insert(ranking.end() - offset, central[j]);
  }
  return PreferenceOrder(std::move(ranking));
}

OrdinalElection sample_mallows(int m, int n, const MallowsSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_mallows");
  const double phi = resolve_phi(m, spec.dispersion);
  const PreferenceOrder central = central_or_identity(m, spec);
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    votes.push_back(sample_mallows_vote(central, phi, rng));
  }
  return OrdinalElection(m, std::move(votes));
}

OrdinalElection sample_mallows(int m, int n, const MallowsMixtureSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_mallows");
  require(!spec.components.empty(), "Mallows mixture: no components");
  std::vector<double> weights;
  std::vector<double> phis;
  std::vector<PreferenceOrder> centrals;
  for (const auto& [w, model] : spec.components) {
    require(w >= 0.0 && std::isfinite(w), "Mallows mixture: weights must be nonnegative");
    weights.push_back(w);
    phis.push_back(resolve_phi(m, model.dispersion));
    centrals.push_back(central_or_identity(m, model));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(total > 0.0, "Mallows mixture: weights must have a positive sum");

  // Component of each voter.
  std::vector<std::size_t> component(static_cast<std::size_t>(n));
  if (spec.exact_split) {
    std::vector<int> counts(weights.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double share = weights[k] / total * n;
      counts[k] = static_cast<int>(std::floor(share));
      assigned += counts[k];
      remainders.emplace_back(share - counts[k], k);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[remainders[r % remainders.size()].second];
    std::size_t voter = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      for (int c = 0; c < counts[k]; ++c) component[voter++] = k;
    }
  }

  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    const std::size_t k = spec.exact_split ? component[static_cast<std::size_t>(i)] : rng.discrete(weights);
    votes.push_back(sample_mallows_vote(centrals[k], phis[k], rng));
  }
  return OrdinalElection(m, std::move(votes));
}

MallowsMixtureSpec balanced_two_mallows(int m, Dispersion dispersion) {
  const PreferenceOrder id = PreferenceOrder::identity(m);
  MallowsMixtureSpec spec;
  spec.components.push_back({0.5, MallowsSpec{id, dispersion}});
  spec.components.push_back({0.5, MallowsSpec{id.reversed(), dispersion}});
  spec.exact_split = true;
  return spec;
}

Point sample_point(int dimension, Shape shape, Rng& rng) {
  Point p(static_cast<std::size_t>(dimension));
  switch (shape) {
    case Shape::cube:
      for (double& x : p) x = rng.uniform();
      break;
    case Shape::gaussian:
      for (double& x : p) x = rng.normal(0.5, 0.25);
      break;
    case Shape::sphere: {
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& x : p) {
          x = rng.normal();
          norm += x * x;
        }
      } while (norm == 0.0);
      norm = std::sqrt(norm);
      for (double& x : p) x = 0.5 + 0.5 * x / norm;
      break;
    }
  }
  return p;
}

std::vector<Point> sample_points(int count, int dimension, Shape shape, Rng& rng) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sample_point(dimension, shape, rng));
  return out;
}

PreferenceOrder rank_by_distance(const Point& voter, const std::vector<Point>& candidates) {
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < voter.size(); ++k) {
      const double diff = voter[k] - candidates[c][k];
      d2 += diff * diff;
    }
    keyed.emplace_back(d2, static_cast<int>(c));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Candidate> ranking;
  ranking.reserve(keyed.size());
  for (const auto& [d, c] : keyed) ranking.push_back(c);
  return PreferenceOrder(std::move(ranking));
}

EuclideanOrdinalSample sample_euclidean_ordinal(int m, int n, const SpaceSpec& space, Seed seed) {
  require_sizes(m, n, "sample_euclidean_ordinal");
  require(space.dimension >= 1, "sample_euclidean_ordinal: dimension must be >= 1");
  EuclideanOrdinalSample out;
  Rng setup(seed, kSetupStream);
  out.candidates = sample_points(m, space.dimension, space.candidate_shape, setup);
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    out.voters.push_back(sample_point(space.dimension, space.voter_shape, rng));
    votes.push_back(rank_by_distance(out.voters.back(), out.candidates));
  }
  out.election = OrdinalElection(m, std::move(votes));
  return out;
}

StructuredSample sample_walsh_sp(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_walsh_sp");
  Rng setup(seed, kSetupStream);
  Axis axis(setup.permutation(m));
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    // Fill from the bottom: the least preferred remaining candidate is always
    // an end of the remaining stretch of the axis, and both ends leave the
    // same number (2^(k-2)) of single-peaked completions.
    std::vector<Candidate> ranking(static_cast<std::size_t>(m));
    int left = 0;
    int right = m - 1;
    for (int pos = m - 1; pos > 0; --pos) {
      ranking[static_cast<std::size_t>(pos)] = rng.bernoulli(0.5) ? axis[left++] : axis[right--];
    }
    ranking[0] = axis[left];
    votes.emplace_back(std::move(ranking));
  }
  return {OrdinalElection(m, std::move(votes)), SinglePeaked{axis}};
}

StructuredSample sample_conitzer_sp(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_conitzer_sp");
  Rng setup(seed, kSetupStream);
  Axis axis(setup.permutation(m));
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int right = left;
    std::vector<Candidate> ranking{axis[left]};
    while (static_cast<int>(ranking.size()) < m) {
      bool go_left;
      if (left == 0) {
        go_left = false;
      } else if (right == m - 1) {
        go_left = true;
      } else {
        go_left = rng.bernoulli(0.5);
      }
      ranking.push_back(go_left ? axis[--left] : axis[++right]);
    }
    votes.emplace_back(std::move(ranking));
  }
  return {OrdinalElection(m, std::move(votes)), SinglePeaked{axis}};
}

StructuredSample sample_spoc(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_spoc");
  Rng setup(seed, kSetupStream);
  Axis axis(setup.permutation(m));
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int right = left;
    std::vector<Candidate> ranking{axis[left]};
    while (static_cast<int>(ranking.size()) < m) {
      // With one candidate left both directions reach it.
      const bool go_left = static_cast<int>(ranking.size()) < m - 1 && rng.bernoulli(0.5);
      if (go_left) {
        left = (left + m - 1) % m;
        ranking.push_back(axis[left]);
      } else {
        right = (right + 1) % m;
        ranking.push_back(axis[right]);
      }
    }
    votes.emplace_back(std::move(ranking));
  }
  return {OrdinalElection(m, std::move(votes)), SinglePeakedOnCircle{axis}};
}

std::vector<PreferenceOrder> single_crossing_path(const PreferenceOrder& start, Rng& rng) {
  const int m = start.size();
  const std::vector<int> start_pos = start.positions();
  std::vector<Candidate> current(start.begin(), start.end());
  std::vector<PreferenceOrder> path{start};
  std::vector<int> admissible;
  for (;;) {
    admissible.clear();
    for (int k = 0; k + 1 < m; ++k) {
      // Still in the starting relative order, so this pair was never swapped.
      if (start_pos[static_cast<std::size_t>(current[static_cast<std::size_t>(k)])] <
          start_pos[static_cast<std::size_t>(current[static_cast<std::size_t>(k) + 1])]) {
        admissible.push_back(k);
      }
    }
    if (admissible.empty()) break;
    const int k = admissible[rng.below(admissible.size())];
    std::swap(current[static_cast<std::size_t>(k)], current[static_cast<std::size_t>(k) + 1]);
    path.emplace_back(current);
  }
  return path;
}

StructuredSample sample_single_crossing(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_single_crossing");
  Rng setup(seed, kSetupStream);
  const PreferenceOrder start = uniform_order(m, setup);
  const std::vector<PreferenceOrder> path = single_crossing_path(start, setup);
  std::vector<std::size_t> steps;
  steps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    steps.push_back(rng.below(path.size()));
  }
  std::sort(steps.begin(), steps.end());
  std::vector<PreferenceOrder> votes;
  votes.reserve(steps.size());
  for (std::size_t s : steps) votes.push_back(path[s]);
  return {OrdinalElection(m, std::move(votes)), SingleCrossing{Axis::identity(n)}};
}

StructuredSample sample_group_separable(int m, int n, TreeKind kind, Seed seed) {
  require_sizes(m, n, "sample_group_separable");
  Rng setup(seed, kSetupStream);
  const std::vector<int> leaves = setup.permutation(m);
  GSTree tree = kind == TreeKind::balanced ? GSTree::balanced(leaves) : GSTree::caterpillar(leaves);
  const std::vector<int> internal = tree.internal_nodes();
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  std::vector<bool> flipped(tree.nodes().size(), false);
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    for (int id : internal) flipped[static_cast<std::size_t>(id)] = rng.bernoulli(0.5);
    votes.emplace_back(tree.frontier(flipped));
  }
  return {OrdinalElection(m, std::move(votes)), GroupSeparable{std::move(tree)}};
}

OrdinalElection reference_election(ReferenceKind kind, int m, int n, Seed seed) {
  require(m >= 1 && n >= 1, "reference_election: need m >= 1 and n >= 1");
  const PreferenceOrder id = PreferenceOrder::identity(m);
  std::vector<PreferenceOrder> votes;
  votes.reserve(static_cast<std::size_t>(n));
  switch (kind) {
    case ReferenceKind::identity:
      votes.assign(static_cast<std::size_t>(n), id);
      break;
    case ReferenceKind::antagonism:
      votes.assign(static_cast<std::size_t>((n + 1) / 2), id);
      votes.insert(votes.end(), static_cast<std::size_t>(n / 2), id.reversed());
      break;
    case ReferenceKind::uniformity: {
      Rng rng(seed, kSetupStream);
      const auto total = factorial(m);
      std::size_t remainder = static_cast<std::size_t>(n);
      if (total && *total <= static_cast<std::uint64_t>(n)) {
        const std::uint64_t rounds = static_cast<std::uint64_t>(n) / *total;
        for (std::uint64_t r = 0; r < rounds; ++r) {
          std::vector<Candidate> perm(id.begin(), id.end());
          do {
            votes.emplace_back(perm);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        remainder = static_cast<std::size_t>(static_cast<std::uint64_t>(n) % *total);
      }
      auto extra = distinct_random_orders(m, remainder, rng);
      votes.insert(votes.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
      break;
    }
  }
  return OrdinalElection(m, std::move(votes));
}

}  // namespace prefforge
