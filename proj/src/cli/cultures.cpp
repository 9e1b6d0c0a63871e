#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prefforge/cli.hpp"

namespace prefforge {

namespace {

using nlohmann::json;

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::cube: return "cube";
    case Shape::sphere: return "sphere";
    case Shape::gaussian: return "gaussian";
  }
  return "?";
}

Dispersion dispersion_of(const CultureArgs& a, json& params, int m) {
  if (a.phi && a.norm_phi) throw std::invalid_argument("give either --phi or --norm-phi, not both");
  Dispersion d;
  if (a.norm_phi) {
    d = NormPhi{*a.norm_phi};
    params["norm_phi"] = *a.norm_phi;
  } else if (a.phi) {
    d = Phi{*a.phi};
  } else {
    throw std::invalid_argument(a.name + " needs --phi or --norm-phi");
  }
  params["phi"] = resolve_phi(m, d);
  return d;
}

double require_p(const CultureArgs& a) {
  if (!a.p) throw std::invalid_argument(a.name + " needs --p");
  return *a.p;
}

double phi_or(const CultureArgs& a, double fallback) {
  if (a.norm_phi) throw std::invalid_argument(a.name + " takes --phi, not --norm-phi");
  return a.phi.value_or(fallback);
}

}  // namespace

const std::vector<std::string>& culture_names() {
  static const std::vector<std::string> names = {
      // ordinal
      "ic", "iac", "urn", "mallows", "mallows_mix", "euclidean", "walsh", "conitzer", "spoc", "single_crossing",
      "group_separable", "id", "an", "un",
      // approval
      "p_ic", "p_ic_per_voter", "resampling", "noise", "euclidean_approval", "ci", "vi", "party_list",
      "truncated"};
  return names;
}

bool is_approval_culture(std::string_view name) {
  const auto& names = culture_names();
  const auto it = std::find(names.begin(), names.end(), name);
  return it != names.end() && it - names.begin() >= 14;
}

SampledCulture sample_culture(const CultureArgs& a, int m, int n, Seed seed) {
  if (m < 1) throw std::invalid_argument("--m must be at least 1");
  if (n < 0) throw std::invalid_argument("--n must be nonnegative");
  SampledCulture out;
  json& params = out.params;
  params = json::object();
  const std::string& c = a.name;

  if (c == "ic") {
    out.election = sample_impartial(m, n, seed);
  } else if (c == "iac") {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    params["alpha"] = 1.0 / f;
    out.election = sample_urn(m, n, UrnSpec::fixed(1.0 / f), seed);
  } else if (c == "urn") {
    if (a.alpha && a.alpha_gamma) throw std::invalid_argument("give either --alpha or --alpha-gamma, not both");
    UrnSpec spec;
    if (a.alpha) {
      spec = UrnSpec::fixed(*a.alpha);
    } else if (a.alpha_gamma) {
      spec = UrnSpec::gamma();
      params["alpha_gamma"] = {{"shape", 0.8}, {"scale", 1.0}};
    } else {
      throw std::invalid_argument("urn needs --alpha or --alpha-gamma");
    }
    params["alpha"] = resolve_urn_alpha(spec, seed);
    out.election = sample_urn(m, n, spec, seed);
  } else if (c == "mallows") {
    MallowsSpec spec;
    spec.dispersion = dispersion_of(a, params, m);
    out.election = sample_mallows(m, n, spec, seed);
  } else if (c == "mallows_mix") {
    const auto d = dispersion_of(a, params, m);
    params["components"] = "identity/reverse, equal split";
    out.election = sample_mallows(m, n, balanced_two_mallows(m, d), seed);
  } else if (c == "euclidean") {
    params["dim"] = a.dim;
    params["shape"] = shape_name(a.shape);
    out.election = sample_euclidean_ordinal(m, n, {a.dim, a.shape, a.shape}, seed).election;
  } else if (c == "walsh" || c == "conitzer" || c == "spoc" || c == "single_crossing" || c == "group_separable") {
    StructuredSample s;
    if (c == "walsh") {
      s = sample_walsh_sp(m, n, seed);
    } else if (c == "conitzer") {
      s = sample_conitzer_sp(m, n, seed);
    } else if (c == "spoc") {
      s = sample_spoc(m, n, seed);
    } else if (c == "single_crossing") {
      s = sample_single_crossing(m, n, seed);
    } else {
      params["tree"] = a.tree == TreeKind::balanced ? "balanced" : "caterpillar";
      s = sample_group_separable(m, n, a.tree, seed);
    }
    out.election = std::move(s.election);
    out.witness = std::move(s.witness);
  } else if (c == "id") {
    out.election = reference_election(ReferenceKind::identity, m, n, seed);
  } else if (c == "an") {
    out.election = reference_election(ReferenceKind::antagonism, m, n, seed);
  } else if (c == "un") {
    out.election = reference_election(ReferenceKind::uniformity, m, n, seed);
  } else if (c == "p_ic") {
    params["p"] = require_p(a);
    out.election = sample_p_ic(m, n, *a.p, seed);
  } else if (c == "p_ic_per_voter") {
    out.election = sample_p_ic_per_voter(m, n, seed);
  } else if (c == "resampling") {
    ResamplingSpec spec{require_p(a), phi_or(a, 0.5)};
    params["p"] = spec.p;
    params["phi"] = spec.phi;
    out.election = sample_resampling(m, n, spec, seed);
  } else if (c == "noise") {
    NoiseSpec spec{require_p(a), phi_or(a, 0.5), a.metric};
    params["p"] = spec.p;
    params["phi"] = spec.phi;
    params["metric"] = a.metric == BallotMetric::hamming ? "hamming" : "jaccard";
    out.election = sample_noise(m, n, spec, seed);
  } else if (c == "euclidean_approval") {
    if (a.radius && a.top_x) throw std::invalid_argument("give either --radius or --top-x, not both");
    BallotRule rule;
    params["dim"] = a.dim;
    params["shape"] = shape_name(a.shape);
    if (a.top_x) {
      rule = TopX{FixedCount{*a.top_x}};
      params["top_x"] = *a.top_x;
    } else {
      const double r = a.radius ? *a.radius : recommended_radius(a.dim);
      rule = Radius{FixedRadius{r}};
      params["radius"] = r;
    }
    out.election = sample_euclidean_approval(m, n, {a.dim, a.shape, a.shape}, rule, seed).election;
  } else if (c == "ci" || c == "vi") {
    auto s = sample_interval(m, n, c == "ci" ? IntervalKind::candidate_interval : IntervalKind::voter_interval, seed);
    out.election = std::move(s.election);
    out.witness = std::move(s.witness);
  } else if (c == "party_list") {
    PartyListSpec spec = UniformGroups{};
    if (a.parties) {
      spec = UrnParties{*a.parties, a.alpha.value_or(0.5)};
      params["parties"] = *a.parties;
      params["alpha"] = a.alpha.value_or(0.5);
    } else {
      params["groups"] = "uniform 5-20 voters, parties of 10-30 candidates";
    }
    out.election = sample_party_list(m, n, spec, seed).election;
  } else if (c == "truncated") {
    if (!a.top_x) throw std::invalid_argument("truncated needs --top-x");
    params["top_x"] = *a.top_x;
    OrdinalElection base;
    if (a.phi || a.norm_phi) {
      MallowsSpec spec;
      spec.dispersion = dispersion_of(a, params, m);
      params["base"] = "mallows";
      base = sample_mallows(m, n, spec, seed);
    } else {
      params["base"] = "ic";
      base = sample_impartial(m, n, seed);
    }
    if (*a.top_x < 0 || *a.top_x > m) throw std::invalid_argument("--top-x must lie in [0, m]");
    out.election = truncate_to_approval(base, FixedCount{*a.top_x}, seed);
  } else {
    throw std::invalid_argument("unknown culture '" + c + "'");
  }
  return out;
}

std::vector<LabeledElection> map_culture_set(int m, int n, Seed seed) {
  std::vector<LabeledElection> out;
  std::uint64_t k = 0;
  auto next_seed = [&] { return splitmix64(seed + 0x9e3779b97f4a7c15ULL * ++k); };
  for (int i = 0; i < 2; ++i) out.push_back({"ic_" + std::to_string(i), sample_impartial(m, n, next_seed())});
  for (int i = 0; i < 3; ++i) out.push_back({"urn_gamma_" + std::to_string(i), sample_urn(m, n, UrnSpec::gamma(), next_seed())});
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    MallowsSpec spec;
    spec.dispersion = NormPhi{x};
    out.push_back({"mallows_" + std::to_string(static_cast<int>(std::lround(x * 100))),
                   sample_mallows(m, n, spec, next_seed())});
  }
  for (double x : {0.2, 0.5}) {
    out.push_back({"mallows_mix_" + std::to_string(static_cast<int>(std::lround(x * 100))),
                   sample_mallows(m, n, balanced_two_mallows(m, NormPhi{x}), next_seed())});
  }
  out.push_back({"conitzer", sample_conitzer_sp(m, n, next_seed()).election});
  out.push_back({"walsh", sample_walsh_sp(m, n, next_seed()).election});
  out.push_back({"spoc", sample_spoc(m, n, next_seed()).election});
  out.push_back({"single_crossing", sample_single_crossing(m, n, next_seed()).election});
  out.push_back({"gs_balanced", sample_group_separable(m, n, TreeKind::balanced, next_seed()).election});
  out.push_back({"gs_caterpillar", sample_group_separable(m, n, TreeKind::caterpillar, next_seed()).election});
  for (int d : {1, 2, 5}) {
    out.push_back({"euclidean_" + std::to_string(d) + "d",
                   sample_euclidean_ordinal(m, n, {d, Shape::cube, Shape::cube}, next_seed()).election});
  }
  return out;
}

}  // namespace prefforge
