// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "prefforge/approval_cultures.hpp"
#include "prefforge/cartography.hpp"
#include "prefforge/cli.hpp"
#include "prefforge/metrics.hpp"
#include "prefforge/ordinal_cultures.hpp"
#include "prefforge/pabulib.hpp"
#include "prefforge/preflib.hpp"

using namespace prefforge;
using oracle::Order;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Order identity(int m) {
  Order id(static_cast<std::size_t>(m));
  std::iota(id.begin(), id.end(), 0);
  return id;
}

std::map<Order, int> count_votes(const OrdinalElection& e) {
  std::map<Order, int> c;
  for (const auto& v : e.votes()) ++c[oracle::to_order(v)];
  return c;
}

std::map<Order, int> count_in_axis(const OrdinalElection& e, const Axis& axis) {
  const Order a(axis.order().begin(), axis.order().end());
  std::map<Order, int> c;
  for (const auto& v : e.votes()) ++c[oracle::in_axis_coordinates(oracle::to_order(v), a)];
  return c;
}

std::map<oracle::Ballot, int> count_ballots(const ApprovalElection& e) {
  std::map<oracle::Ballot, int> c;
  for (const auto& b : e.ballots()) ++c[oracle::to_ballot(b)];
  return c;
}

std::vector<Order> orders_of(const OrdinalElection& e) {
  std::vector<Order> out;
  for (const auto& v : e.votes()) out.push_back(oracle::to_order(v));
  return out;
}

std::vector<std::vector<int>> internal_leaf_sets(const GSTree& t) {
  std::vector<std::vector<int>> out;
  std::function<std::vector<int>(int)> leaves = [&](int id) -> std::vector<int> {
    const auto& node = t.node(id);
    if (node.is_leaf()) return {node.leaf};
    std::vector<int> all;
    for (int c : node.children) {
      auto sub = leaves(c);
      all.insert(all.end(), sub.begin(), sub.end());
    }
    out.push_back(all);
    return all;
  };
  leaves(t.root());
  return out;
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

bool non_increasing(const std::vector<double>& h) {
  for (std::size_t t = 1; t < h.size(); ++t) {
    if (h[t] > h[t - 1] * (1 + 1e-12) + 1e-12) return false;
  }
  return true;
}

// ---- criteria ----------------------------------------------------------------

void mallows_exactness(Outcome& o) {
  const Order central{2, 0, 3, 1};
  for (double phi : {0.25, 0.5, 1.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = sample_mallows(4, 50000, MallowsSpec{PreferenceOrder(central), Phi{phi}}, 101);
    const double secs = seconds_since(t0);
    const double tv = oracle::total_variation(oracle::mallows_pmf(central, phi), count_votes(e));
    o.detail << " phi=" << phi << ":tv=" << tv << ",t=" << secs << "s";
    o.require(tv <= 0.02, "tv");
    o.require(secs < 10, "runtime");
  }
}

void norm_phi_contract(Outcome& o) {
  for (int m : {5, 10}) {
    for (double np : {0.25, 0.5, 0.75}) {
      const auto e = sample_mallows(m, 20000, MallowsSpec{std::nullopt, NormPhi{np}}, 202 + m);
      double sum = 0;
      for (const auto& v : e.votes()) sum += swap_distance(v, PreferenceOrder::identity(m));
      const double mean = sum / e.num_voters();
      const double target = np * m * (m - 1) / 4.0;
      const double rel = std::abs(mean - target) / target;
      o.detail << " m=" << m << ",np=" << np << ":" << mean << "/" << target;
      o.require(rel <= 0.02, "mean m=" + std::to_string(m));
    }
  }
}

void urn_identities(Outcome& o) {
  const auto e = sample_urn(3, 60000, UrnSpec::fixed(0.0), 303);
  const double tv = oracle::total_variation(oracle::uniform_over(oracle::all_orders(3)), count_votes(e));
  const auto ic = sample_impartial(3, 100, 304);
  const bool same = sample_urn(3, 100, UrnSpec::fixed(0.0), 304) == ic;
  int repeats = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    const auto u = sample_urn(3, 2, UrnSpec::fixed(1.0), static_cast<Seed>(t));
    repeats += u.vote(0) == u.vote(1);
  }
  const double p = repeats / static_cast<double>(trials);
  o.detail << " alpha0_tv=" << tv << " alpha0_equals_ic=" << same << " P(v2=v1)=" << p << " (7/12="
           << 7.0 / 12 << ")";
  o.require(tv <= 0.02, "alpha=0 tv");
  o.require(std::abs(p - 7.0 / 12) <= 0.01, "7/12");
}

void walsh_conitzer(Outcome& o) {
  for (int m : {3, 4, 5}) {
    const auto s = sample_walsh_sp(m, 50000, 400 + m);
    const auto counts = count_in_axis(s.election, std::get<SinglePeaked>(s.witness).axis);
    std::vector<Order> sp;
    for (const auto& v : oracle::all_orders(m)) {
      if (oracle::single_peaked(v, identity(m))) sp.push_back(v);
    }
    const double tv = oracle::total_variation(oracle::uniform_over(sp), counts);
    o.detail << " walsh m=" << m << ":distinct=" << counts.size() << ",tv=" << tv;
    o.require(counts.size() == (1u << (m - 1)), "distinct votes m=" + std::to_string(m));
    o.require(tv <= 0.02, "walsh tv m=" + std::to_string(m));
  }
  // Law derived by hand: an end peak forces the vote, a middle peak flips a coin.
  const std::map<Order, double> law{
      {{0, 1, 2}, 1.0 / 3}, {{2, 1, 0}, 1.0 / 3}, {{1, 0, 2}, 1.0 / 6}, {{1, 2, 0}, 1.0 / 6}};
  const auto c = sample_conitzer_sp(3, 50000, 410);
  const double tv = oracle::total_variation(law, count_in_axis(c.election, std::get<SinglePeaked>(c.witness).axis));
  o.detail << " conitzer m=3:tv=" << tv;
  o.require(tv <= 0.02, "conitzer tv");
}

void spoc_uniformity(Outcome& o) {
  const auto s = sample_spoc(4, 50000, 500);
  const auto counts = count_in_axis(s.election, std::get<SinglePeakedOnCircle>(s.witness).axis);
  std::vector<Order> domain;
  for (const auto& v : oracle::all_orders(4)) {
    if (oracle::single_peaked_on_circle(v, identity(4))) domain.push_back(v);
  }
  const double tv = oracle::total_variation(oracle::uniform_over(domain), counts);
  o.detail << " domain=" << domain.size() << " observed=" << counts.size() << " tv=" << tv;
  o.require(domain.size() == 16, "domain size");
  o.require(tv <= 0.02, "tv");
}

void group_separable(Outcome& o) {
  const auto s = sample_group_separable(4, 50000, TreeKind::caterpillar, 600);
  const auto sets = internal_leaf_sets(std::get<GroupSeparable>(s.witness).tree);
  std::vector<Order> domain;
  for (const auto& v : oracle::all_orders(4)) {
    if (oracle::group_separable(v, sets)) domain.push_back(v);
  }
  const double tv = oracle::total_variation(oracle::uniform_over(domain), count_votes(s.election));
  int valid = 0, total = 0;
  for (int m = 1; m <= 10; ++m) {
    for (auto kind : {TreeKind::balanced, TreeKind::caterpillar}) {
      for (Seed seed = 0; seed < 10; ++seed) {
        const auto g = sample_group_separable(m, 200, kind, 610 + seed * 100 + m);
        valid += validate_structure(g.election, g.witness);
        ++total;
      }
    }
  }
  o.detail << " caterpillar domain=" << domain.size() << " tv=" << tv << " witnesses=" << valid << "/" << total;
  o.require(domain.size() == 8, "domain size");
  o.require(tv <= 0.02, "tv");
  o.require(valid == total, "witness validation");
}

void resampling(Outcome& o) {
  for (double phi : {0.25, 0.5, 1.0}) {
    for (auto [m, p] : {std::pair{10, 0.5}, std::pair{20, 0.3}}) {
      const auto e = sample_resampling(m, 50000, {p, phi}, 700);
      double size = 0;
      for (const auto& b : e.ballots()) size += b.size();
      size /= e.num_voters();
      const double target = std::floor(p * m + 1e-9);
      o.detail << " phi=" << phi << ",m=" << m << ":" << size << "/" << target;
      o.require(std::abs(size - target) <= 0.01 * target, "mean size");
    }
  }
  const auto e = sample_resampling(4, 50000, {0.3, 1.0}, 710);
  std::map<oracle::Ballot, double> pic;
  for (const auto& b : oracle::all_ballots(4)) pic[b] = std::pow(0.3, b.size()) * std::pow(0.7, 4 - b.size());
  const double tv = oracle::total_variation(pic, count_ballots(e));
  o.detail << " phi=1 vs p-IC tv=" << tv;
  o.require(tv <= 0.02, "p-IC tv");
}

void noise_model(Outcome& o) {
  for (auto metric : {BallotMetric::hamming, BallotMetric::jaccard}) {
    for (double phi : {0.3, 0.7}) {
      const Seed seed = 800;
      const auto e = sample_noise(4, 50000, {0.5, phi, metric}, seed);
      Rng setup(seed, kSetupStream);
      const auto u = oracle::to_ballot(sample_central_ballot(4, 0.5, setup));
      std::map<oracle::Ballot, double> pmf;
      double z = 0;
      for (const auto& v : oracle::all_ballots(4)) {
        const double d = metric == BallotMetric::hamming ? oracle::hamming(u, v) : oracle::jaccard(u, v);
        z += pmf[v] = std::pow(phi, d);
      }
      for (auto& [b, w] : pmf) w /= z;
      const double tv = oracle::total_variation(pmf, count_ballots(e));
      o.detail << " " << (metric == BallotMetric::hamming ? "hamming" : "jaccard") << " phi=" << phi << ":tv=" << tv;
      o.require(tv <= 0.02, "tv");
    }
  }
}

void isomorphic_distance(Outcome& o) {
  int brute_ok = 0;
  for (Seed s = 0; s < 100; ++s) {
    const auto a = sample_impartial(3, 3, 900 + s), b = sample_impartial(3, 3, 5900 + s);
    brute_ok += election_distance_exact(a, b) == oracle::isomorphic_distance(orders_of(a), orders_of(b));
  }
  int invariant = 0;
  for (Seed s = 0; s < 100; ++s) {
    const int m = 2 + static_cast<int>(s % 4);
    const auto a = sample_mallows(m, 8, MallowsSpec{std::nullopt, NormPhi{0.5}}, 1000 + s);
    Rng rng(1000 + s, 1);
    const auto cmap = rng.permutation(m);
    const auto vorder = rng.permutation(8);
    invariant += election_distance_exact(a, relabel(a, cmap, vorder)) == 0;
  }
  int above = 0, equal = 0;
  const int pairs = 100;
  for (Seed s = 0; s < pairs; ++s) {
    const auto a = sample_impartial(4, 10, 1100 + s);
    const auto b = s % 2 ? sample_urn(4, 10, UrnSpec::fixed(0.5), 1200 + s)
                         : sample_mallows(4, 10, MallowsSpec{std::nullopt, NormPhi{0.3}}, 1200 + s);
    const auto exact = election_distance_exact(a, b);
    const auto h = election_distance_heuristic(a, b, 20, 1300 + s).value;
    above += h >= exact;
    equal += h == exact;
  }
  o.detail << " brute=" << brute_ok << "/100 relabel=" << invariant << "/100 heuristic>=exact=" << above << "/"
           << pairs << " equal=" << equal << "/" << pairs;
  o.require(brute_ok == 100, "brute force");
  o.require(invariant == 100, "relabel invariance");
  o.require(above == pairs, "upper bound");
  o.require(equal >= 95, "equal on 95%");
}

void mds(Outcome& o) {
  bool monotone = true;
  int tested = 0;
  Rng rng(1400);
  for (int t = 0; t < 10; ++t) {
    const std::size_t k = 5 + static_cast<std::size_t>(rng.below(20));
    DistanceMatrix d(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) d.set(i, j, rng.uniform() * 10);
    }
    for (int n_init : {1, 4}) {
      const auto e = mds_embed(d, 2, MdsConfig{.seed = static_cast<Seed>(t), .n_init = n_init});
      monotone = monotone && non_increasing(e.stress_history);
      ++tested;
    }
  }
  const auto elections = vote_distance_matrix(sample_mallows(6, 200, MallowsSpec{std::nullopt, NormPhi{0.3}}, 1401), true);
  monotone = monotone && non_increasing(mds_embed(elections.distances).stress_history);
  ++tested;

  int embedded = 0;
  double worst = 0;
  const int embeddable = 20;
  for (int t = 0; t < embeddable; ++t) {
    const std::size_t k = 4 + static_cast<std::size_t>(rng.below(20));
    std::vector<std::vector<double>> pts(k);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    DistanceMatrix d(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) d.set(i, j, euclid(pts[i], pts[j]));
    }
    const auto e = mds_embed(d, 2, MdsConfig{.max_iter = 1000, .rel_tol = 0, .seed = static_cast<Seed>(t)});
    monotone = monotone && non_increasing(e.stress_history);
    ++tested;
    worst = std::max(worst, e.stress);
    embedded += e.stress < 1e-6 && e.iterations <= 1000;
  }

  const int m = kMicroscopeCandidates;
  const auto id = microscope_layout(reference_election(ReferenceKind::identity, m, kMicroscopeVoters));
  const auto an = microscope_layout(reference_election(ReferenceKind::antagonism, m, kMicroscopeVoters));
  const bool id_ok = id.size() == 1 && id.multiplicities[0] == kMicroscopeVoters;
  const bool an_ok = an.size() == 2 && std::abs(euclid(an.coords[0], an.coords[1]) - m * (m - 1) / 2.0) < 1e-6 &&
                     an.multiplicities[0] == kMicroscopeVoters / 2 && an.multiplicities[1] == kMicroscopeVoters / 2;
  o.detail << " monotone=" << monotone << " (" << tested << " runs) embeddable=" << embedded << "/" << embeddable
           << " worst_stress=" << worst << " microscope_id=" << id_ok << " microscope_an=" << an_ok;
  o.require(monotone, "monotone stress");
  o.require(embedded == embeddable, "embeddable stress");
  o.require(id_ok && an_ok, "microscope");
}

void format_round_trips(Outcome& o) {
  int soc_ok = 0, pb_ok = 0;
  const int files = 500;
  Rng rng(1500);
  const std::vector<std::string> ordinal{"ic", "urn", "mallows", "euclidean", "walsh", "spoc", "single_crossing", "an"};
  const std::vector<std::string> approval{"p_ic", "resampling", "noise", "euclidean_approval", "ci", "vi"};
  for (int i = 0; i < files; ++i) {
    const int m = 2 + static_cast<int>(rng.below(14)), n = 1 + static_cast<int>(rng.below(80));
    CultureArgs args;
    args.name = ordinal[static_cast<std::size_t>(i) % ordinal.size()];
    args.alpha = 0.3;
    args.norm_phi = 0.4;
    const auto e = std::get<OrdinalElection>(sample_culture(args, m, n, static_cast<Seed>(i)).election);
    const std::string text = serialize_preflib(e);
    const auto doc = parse_preflib(text);
    soc_ok += doc.to_ordinal() == e && serialize_preflib(doc) == text;

    CultureArgs a;
    a.name = approval[static_cast<std::size_t>(i) % approval.size()];
    a.p = 0.3;
    a.phi = 0.5;
    const auto b = std::get<ApprovalElection>(sample_culture(a, m, n, static_cast<Seed>(i)).election);
    const std::string pb = serialize_pabulib(b);
    const auto parsed = parse_pabulib(pb);
    pb_ok += parsed.election == b && serialize_pabulib(parsed.election, parsed.metadata) == pb;
  }
  o.detail << " soc=" << soc_ok << "/" << files << " pb=" << pb_ok << "/" << files;
  o.require(soc_ok == files && pb_ok == files, "round trip");
}

void end_to_end_map(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  MapConfig cfg;
  cfg.seed = 2024;
  const auto map = map_layout(map_culture_set(kMapCandidates, kMapVoters, cfg.seed), cfg);
  const double secs = seconds_since(t0);
  const auto& emb = map.embedding;
  auto at = [&](const std::string& label) {
    for (std::size_t i = 0; i < emb.labels.size(); ++i) {
      if (emb.labels[i] == label) return i;
    }
    throw std::runtime_error("missing " + label);
  };
  const auto& id = emb.coords[at("ID")];
  const auto& un = emb.coords[at("UN")];
  std::vector<double> axis(id.size());
  double len2 = 0;
  for (std::size_t k = 0; k < axis.size(); ++k) len2 += (axis[k] = un[k] - id[k]) * axis[k];
  auto projection = [&](const std::string& label) {
    const auto& p = emb.coords[at(label)];
    double s = 0;
    for (std::size_t k = 0; k < axis.size(); ++k) s += (p[k] - id[k]) * axis[k];
    return s / len2;
  };
  bool monotone = true;
  double previous = -1e300;
  o.detail << " mallows projections:";
  for (const char* label : {"mallows_10", "mallows_30", "mallows_50", "mallows_70", "mallows_90"}) {
    const double t = projection(label);
    o.detail << " " << t;
    monotone = monotone && t > previous;
    previous = t;
  }
  std::string nearest;
  double best = 1e300;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    const auto& label = emb.labels[i];
    if (label == "ID" || label == "AN" || label == "UN") continue;
    const double d = euclid(emb.coords[i], un);
    if (d < best) {
      best = d;
      nearest = label;
    }
  }
  o.detail << " nearest_to_UN=" << nearest << " points=" << emb.size() << " stress1=" << emb.kruskal_stress1
           << " t=" << secs << "s";
  o.require(monotone, "monotone Mallows projection");
  o.require(nearest.rfind("ic_", 0) == 0, "IC nearest to UN");
  o.require(secs < 15 * 60, "runtime");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Outcome&)>> criteria{
      {"mallows-exactness", mallows_exactness},
      {"norm-phi-contract", norm_phi_contract},
      {"urn-identities", urn_identities},
      {"walsh-conitzer", walsh_conitzer},
      {"spoc-uniformity", spoc_uniformity},
      {"group-separable", group_separable},
      {"resampling", resampling},
      {"noise-model", noise_model},
      {"isomorphic-distance", isomorphic_distance},
      {"mds", mds},
      {"format-round-trips", format_round_trips},
      {"end-to-end-map", end_to_end_map},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("%s %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
