#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "prefforge/approval_cultures.hpp"
#include "prefforge/cartography.hpp"
#include "prefforge/election.hpp"
#include "prefforge/ordinal_cultures.hpp"

namespace prefforge {

// ---- Size regimes ---------------------------------------------------------

struct SizeRegime {
  std::string name;
  int m_min, m_max;
  int n_min, n_max;
  bool m_at_least_n = false;  // ground truth: m is drawn from [max(n, m_min), m_max]
};

const std::vector<SizeRegime>& size_regimes();
// Throws std::invalid_argument for unknown names.
const SizeRegime& size_regime(std::string_view name);
// Log-uniform (m, n) from the regime's ranges.
std::pair<int, int> sample_size(const SizeRegime& regime, Seed seed);

// ---- Cultures -------------------------------------------------------------

struct CultureArgs {
  std::string name;
  std::optional<double> phi;
  std::optional<double> norm_phi;
  std::optional<double> alpha;
  bool alpha_gamma = false;
  std::optional<double> p;
  std::optional<double> radius;
  std::optional<int> top_x;
  int dim = 2;
  Shape shape = Shape::cube;
  TreeKind tree = TreeKind::balanced;
  std::optional<int> parties;
  BallotMetric metric = BallotMetric::hamming;
};

using AnyElection = std::variant<OrdinalElection, ApprovalElection>;

struct SampledCulture {
  AnyElection election;
  std::optional<StructureWitness> witness;
  nlohmann::json params;  // resolved parameters
};

const std::vector<std::string>& culture_names();
bool is_approval_culture(std::string_view name);
// Throws std::invalid_argument for unknown cultures and bad parameters.
SampledCulture sample_culture(const CultureArgs& args, int m, int n, Seed seed);

// IC, urn-gamma(0.8, 1), norm-phi Mallows, balanced two-Mallows, Conitzer,
// Walsh, SPOC, single-crossing, GS balanced/caterpillar, 1D/2D/5D cube.
std::vector<LabeledElection> map_culture_set(int m, int n, Seed seed);

// ---- Witness files --------------------------------------------------------

std::string witness_to_json(const StructureWitness& w);
// Throws std::invalid_argument on malformed input.
StructureWitness witness_from_json(std::string_view text);

// ---- Entry point ----------------------------------------------------------

// Exit codes: 0 success, 1 I/O failure or a failed validation, 2 usage or
// parameter errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefforge
