#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "prefforge/approval_cultures.hpp"

namespace prefforge {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_sizes(int m, int n, const char* who) {
  require(m >= 1, std::string(who) + ": need m >= 1");
  require(n >= 0, std::string(who) + ": need n >= 0");
}

void require_probability(double p, const char* what) {
  require(p >= 0.0 && p <= 1.0, std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double squared_distance(const Point& a, const Point& b) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
  return d2;
}

void validate_count_rule(const CountRule& rule, int m) {
  if (const auto* f = std::get_if<FixedCount>(&rule)) {
    require(f->x >= 0 && f->x <= m, "top-x: x must lie in 0..m (m = " + std::to_string(m) + ")");
  } else if (const auto* u = std::get_if<UniformCount>(&rule)) {
    require(u->lo >= 0 && u->lo <= u->hi && u->hi <= m, "top-x: need 0 <= lo <= hi <= m");
  } else {
    require(std::get<NormalCount>(rule).sd >= 0.0, "top-x: normal sd must be nonnegative");
  }
}

}  // namespace

ApprovalElection sample_p_ic(int m, int n, double p, Seed seed) {
  require_sizes(m, n, "sample_p_ic");
  require_probability(p, "p");
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    std::vector<Candidate> approved;
    for (int c = 0; c < m; ++c) {
      if (rng.bernoulli(p)) approved.push_back(c);
    }
    ballots.emplace_back(std::move(approved));
  }
  return ApprovalElection(m, std::move(ballots));
}

ApprovalElection sample_p_ic_per_voter(int m, int n, Seed seed) {
  require_sizes(m, n, "sample_p_ic_per_voter");
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    const double p = rng.uniform();
    std::vector<Candidate> approved;
    for (int c = 0; c < m; ++c) {
      if (rng.bernoulli(p)) approved.push_back(c);
    }
    ballots.emplace_back(std::move(approved));
  }
  return ApprovalElection(m, std::move(ballots));
}

int central_ballot_size(int m, double p) {
  // The epsilon keeps products such as 0.57 * 100 from rounding down to 56.
  const int k = static_cast<int>(std::floor(p * m + 1e-9));
  return std::clamp(k, 0, m);
}

ApprovalBallot sample_central_ballot(int m, double p, Rng& rng) {
  std::vector<int> perm = rng.permutation(m);
  perm.resize(static_cast<std::size_t>(central_ballot_size(m, p)));
  return ApprovalBallot(std::move(perm));
}

ApprovalElection sample_resampling(int m, int n, const ResamplingSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_resampling");
  require_probability(spec.p, "p");
  require_probability(spec.phi, "phi");
  Rng setup(seed, kSetupStream);
  const ApprovalBallot central = sample_central_ballot(m, spec.p, setup);
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    std::vector<Candidate> approved;
    for (int c = 0; c < m; ++c) {
      const bool keep = !rng.bernoulli(spec.phi);
      const bool approve = keep ? central.contains(c) : rng.bernoulli(spec.p);
      if (approve) approved.push_back(c);
    }
    ballots.emplace_back(std::move(approved));
  }
  return ApprovalElection(m, std::move(ballots));
}

ApprovalBallot sample_noise_ballot(const ApprovalBallot& central, int m, double phi, BallotMetric metric,
                                   Rng& rng) {
  if (metric == BallotMetric::hamming) {
    // phi^|u xor v| factorizes over candidates: each entry flips with
    // probability phi / (1 + phi).
    const double flip = phi / (1.0 + phi);
    std::vector<Candidate> approved;
    for (int c = 0; c < m; ++c) {
      if (central.contains(c) != rng.bernoulli(flip)) approved.push_back(c);
    }
    return ApprovalBallot(std::move(approved));
  }

  // Jaccard distance depends only on a = |u and v| and b = |v \ u|, so draw
  // (a, b) with weight C(|u|, a) C(m - |u|, b) phi^d and then pick the sets.
  const int k = central.size();
  const int rest = m - k;
  std::vector<double> logw;
  logw.reserve(static_cast<std::size_t>((k + 1) * (rest + 1)));
  const double log_phi = phi > 0.0 ? std::log(phi) : -std::numeric_limits<double>::infinity();
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; b <= rest; ++b) {
      const double d = k + b > 0 ? 1.0 - static_cast<double>(a) / (k + b) : 0.0;
      const double lw = d == 0.0 ? 0.0 : d * log_phi;
      logw.push_back(log_choose(k, a) + log_choose(rest, b) + lw);
    }
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(logw.size());
  std::transform(logw.begin(), logw.end(), w.begin(), [&](double x) { return std::exp(x - top); });
  const std::size_t cell = rng.discrete(w);
  const int a = static_cast<int>(cell / static_cast<std::size_t>(rest + 1));
  const int b = static_cast<int>(cell % static_cast<std::size_t>(rest + 1));

  std::vector<Candidate> kept(central.begin(), central.end());
  rng.shuffle(kept);
  kept.resize(static_cast<std::size_t>(a));
  std::vector<Candidate> outside;
  for (int c = 0; c < m; ++c) {
    if (!central.contains(c)) outside.push_back(c);
  }
  rng.shuffle(outside);
  kept.insert(kept.end(), outside.begin(), outside.begin() + b);
  return ApprovalBallot(std::move(kept));
}

ApprovalElection sample_noise(int m, int n, const NoiseSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_noise");
  require_probability(spec.p, "p");
  require_probability(spec.phi, "phi");
  Rng setup(seed, kSetupStream);
  const ApprovalBallot central = sample_central_ballot(m, spec.p, setup);
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    ballots.push_back(sample_noise_ballot(central, m, spec.phi, spec.metric, rng));
  }
  return ApprovalElection(m, std::move(ballots));
}

ResamplingSpec draw_resampling_spec(const ResamplingRange& range, Rng& rng) {
  if (!(range.p_min <= range.p_max) || !(range.phi_min <= range.phi_max)) {
    throw std::invalid_argument("draw_resampling_spec: empty range");
  }
  ResamplingSpec spec;
  spec.p = range.p_min + (range.p_max - range.p_min) * rng.uniform();
  spec.phi = range.phi_min + (range.phi_max - range.phi_min) * rng.uniform();
  return spec;
}

double recommended_radius(int dimension) { return dimension <= 1 ? 0.05 : 0.2; }

int resolve_count(const CountRule& rule, int m, Rng& rng) {
  int x = 0;
  if (const auto* f = std::get_if<FixedCount>(&rule)) {
    x = f->x;
  } else if (const auto* u = std::get_if<UniformCount>(&rule)) {
    x = static_cast<int>(rng.between(u->lo, u->hi));
  } else {
    const auto& nc = std::get<NormalCount>(rule);
    x = static_cast<int>(std::lround(rng.normal(nc.mean, nc.sd)));
  }
  return std::clamp(x, 0, m);
}

EuclideanApprovalSample sample_euclidean_approval(int m, int n, const SpaceSpec& space, const BallotRule& rule,
                                                  Seed seed) {
  require_sizes(m, n, "sample_euclidean_approval");
  require(space.dimension >= 1, "sample_euclidean_approval: dimension must be >= 1");
  if (const auto* t = std::get_if<TopX>(&rule)) validate_count_rule(t->count, m);
  if (const auto* r = std::get_if<Radius>(&rule)) {
    if (const auto* f = std::get_if<FixedRadius>(&r->radius)) require(f->r > 0.0, "radius must be positive");
    if (const auto* u = std::get_if<UniformRadius>(&r->radius)) {
      require(u->lo > 0.0 && u->lo <= u->hi, "radius range must satisfy 0 < lo <= hi");
    }
    if (const auto* k = std::get_if<NearestMultipleRadius>(&r->radius)) {
      require(k->factor > 0.0, "radius factor must be positive");
    }
  }
  if (const auto* c = std::get_if<CandidateTopX>(&rule)) {
    require(c->x >= 0 && c->x <= n, "candidate top-x: x must lie in 0..n");
  }

  EuclideanApprovalSample out;
  Rng setup(seed, kSetupStream);
  out.candidates = sample_points(m, space.dimension, space.candidate_shape, setup);
  std::vector<std::vector<Candidate>> approved(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    out.voters.push_back(sample_point(space.dimension, space.voter_shape, rng));
    const Point& voter = out.voters.back();
    auto& ballot = approved[static_cast<std::size_t>(i)];
    if (const auto* t = std::get_if<TopX>(&rule)) {
      const int x = resolve_count(t->count, m, rng);
      const PreferenceOrder order = rank_by_distance(voter, out.candidates);
      ballot.assign(order.begin(), order.begin() + x);
    } else if (const auto* r = std::get_if<Radius>(&rule)) {
      double radius = 0.0;
      if (const auto* f = std::get_if<FixedRadius>(&r->radius)) {
        radius = f->r;
      } else if (const auto* u = std::get_if<UniformRadius>(&r->radius)) {
        radius = rng.uniform(u->lo, u->hi);
      } else {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& c : out.candidates) nearest = std::min(nearest, squared_distance(voter, c));
        radius = std::get<NearestMultipleRadius>(r->radius).factor * std::sqrt(nearest);
      }
      for (int c = 0; c < m; ++c) {
        if (std::sqrt(squared_distance(voter, out.candidates[static_cast<std::size_t>(c)])) <= radius) {
          ballot.push_back(c);
        }
      }
    }
  }
  if (const auto* c = std::get_if<CandidateTopX>(&rule)) {
    for (int cand = 0; cand < m; ++cand) {
      std::vector<std::pair<double, int>> keyed;
      for (int v = 0; v < n; ++v) {
        keyed.emplace_back(squared_distance(out.voters[static_cast<std::size_t>(v)],
                                            out.candidates[static_cast<std::size_t>(cand)]),
                           v);
      }
      std::sort(keyed.begin(), keyed.end());
      for (int k = 0; k < c->x; ++k) approved[static_cast<std::size_t>(keyed[static_cast<std::size_t>(k)].second)].push_back(cand);
    }
  }
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(approved.size());
  for (auto& a : approved) ballots.emplace_back(std::move(a));
  out.election = ApprovalElection(m, std::move(ballots));
  return out;
}

StructuredApprovalSample sample_interval(int m, int n, IntervalKind kind, Seed seed) {
  require(m >= 1 && n >= 1, "sample_interval: need m >= 1 and n >= 1");
  Rng setup(seed, kSetupStream);
  std::vector<double> cand_pos(static_cast<std::size_t>(m));
  std::vector<double> cand_radius(static_cast<std::size_t>(m), 0.0);
  for (int c = 0; c < m; ++c) {
    cand_pos[static_cast<std::size_t>(c)] = setup.uniform();
    if (kind == IntervalKind::voter_interval) cand_radius[static_cast<std::size_t>(c)] = 1.0 - setup.uniform();
  }
  std::vector<double> voter_pos(static_cast<std::size_t>(n));
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, vote_stream(i));
    const double x = rng.uniform();
    voter_pos[static_cast<std::size_t>(i)] = x;
    const double voter_radius = kind == IntervalKind::candidate_interval ? 1.0 - rng.uniform() : 0.0;
    std::vector<Candidate> approved;
    for (int c = 0; c < m; ++c) {
      const double r = kind == IntervalKind::candidate_interval ? voter_radius : cand_radius[static_cast<std::size_t>(c)];
      if (std::abs(x - cand_pos[static_cast<std::size_t>(c)]) <= r) approved.push_back(c);
    }
    ballots.emplace_back(std::move(approved));
  }

  auto sorted_by = [](const std::vector<double>& pos) {
    std::vector<int> order(pos.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)];
    });
    return Axis(std::move(order));
  };
  StructureWitness witness = kind == IntervalKind::candidate_interval
                                 ? StructureWitness{CandidateInterval{sorted_by(cand_pos)}}
                                 : StructureWitness{VoterInterval{sorted_by(voter_pos)}};
  return {ApprovalElection(m, std::move(ballots)), std::move(witness)};
}

PartyListSample sample_party_list(int m, int n, const PartyListSpec& spec, Seed seed) {
  require_sizes(m, n, "sample_party_list");
  Rng setup(seed, kSetupStream);
  const std::vector<int> candidate_perm = setup.permutation(m);
  std::vector<std::vector<Candidate>> ballots(static_cast<std::size_t>(n));
  std::vector<int> voter_order;

  if (const auto* ug = std::get_if<UniformGroups>(&spec)) {
    require(ug->group_min >= 1 && ug->group_min <= ug->group_max, "party list: need 1 <= group_min <= group_max");
    require(ug->party_min >= 1 && ug->party_min <= ug->party_max, "party list: need 1 <= party_min <= party_max");
    voter_order = setup.permutation(n);
    int next_voter = 0;
    int next_candidate = 0;
    while (next_voter < n) {
      // The last group takes whatever voters remain.
      const int size = std::min(static_cast<int>(setup.between(ug->group_min, ug->group_max)), n - next_voter);
      const int party = static_cast<int>(setup.between(ug->party_min, ug->party_max));
      if (next_candidate + party > m) {
        throw std::invalid_argument("party list: " + std::to_string(m) +
                                    " candidates are not enough for disjoint parties of " +
                                    std::to_string(ug->party_min) + ".." + std::to_string(ug->party_max));
      }
      std::vector<Candidate> members(candidate_perm.begin() + next_candidate,
                                     candidate_perm.begin() + next_candidate + party);
      for (int k = 0; k < size; ++k) ballots[static_cast<std::size_t>(voter_order[static_cast<std::size_t>(next_voter + k)])] = members;
      next_voter += size;
      next_candidate += party;
    }
  } else {
    const auto& up = std::get<UrnParties>(spec);
    require(up.parties >= 1 && up.parties <= m, "party list: need 1 <= parties <= m");
    require(up.alpha >= 0.0 && std::isfinite(up.alpha), "party list: alpha must be nonnegative");
    const int party_size = m / up.parties;
    std::vector<int> party_of(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      Rng rng(seed, vote_stream(t));
      // Urn of g party ballots; each draw returns alpha*g extra copies.
      const double reinforced = up.alpha * t;
      if (t > 0 && rng.bernoulli(reinforced / (1.0 + reinforced))) {
        party_of[static_cast<std::size_t>(t)] = party_of[rng.below(static_cast<std::uint64_t>(t))];
      } else {
        party_of[static_cast<std::size_t>(t)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(up.parties)));
      }
      const int p = party_of[static_cast<std::size_t>(t)];
      ballots[static_cast<std::size_t>(t)].assign(candidate_perm.begin() + p * party_size,
                                                  candidate_perm.begin() + (p + 1) * party_size);
    }
    voter_order.resize(static_cast<std::size_t>(n));
    std::iota(voter_order.begin(), voter_order.end(), 0);
    std::stable_sort(voter_order.begin(), voter_order.end(), [&](int a, int b) {
      return party_of[static_cast<std::size_t>(a)] < party_of[static_cast<std::size_t>(b)];
    });
  }

  std::vector<ApprovalBallot> out;
  out.reserve(ballots.size());
  for (auto& b : ballots) out.emplace_back(std::move(b));
  return {ApprovalElection(m, std::move(out)), Axis(candidate_perm), Axis(std::move(voter_order))};
}

bool is_party_list(const ApprovalElection& e) {
  std::vector<int> owner(static_cast<std::size_t>(e.num_candidates()), -1);
  for (int v = 0; v < e.num_voters(); ++v) {
    for (Candidate c : e.ballot(v)) {
      int& o = owner[static_cast<std::size_t>(c)];
      if (o < 0) {
        o = v;
      } else if (!(e.ballot(o) == e.ballot(v))) {
        return false;
      }
    }
  }
  return true;
}

ApprovalElection truncate_to_approval(const OrdinalElection& e, const CountRule& count, Seed seed) {
  const int m = e.num_candidates();
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(static_cast<std::size_t>(e.num_voters()));
  for (int i = 0; i < e.num_voters(); ++i) {
    Rng rng(seed, vote_stream(i));
    const int x = resolve_count(count, m, rng);
    const auto ranking = e.vote(i).ranking();
    ballots.emplace_back(std::vector<Candidate>(ranking.begin(), ranking.begin() + x));
  }
  return ApprovalElection(m, std::move(ballots));
}

}  // namespace prefforge
