#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prefforge/cli.hpp"

namespace prefforge {

namespace {

// Stream reserved for size draws so they never collide with vote streams.
constexpr std::uint64_t kRegimeStream = 0x5245474dULL << 32;

int log_uniform(int lo, int hi, Rng& rng) {
  if (lo >= hi) return lo;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi) + 1.0);
  const int v = static_cast<int>(std::floor(std::exp(rng.uniform(a, b))));
  return std::clamp(v, lo, hi);
}

}  // namespace

const std::vector<SizeRegime>& size_regimes() {
  static const std::vector<SizeRegime> regimes = {
      {"small", 2, 30, 2, 30, false},
      {"political", 2, 20, 2000, 100000, false},
      {"institutional", 2, 30, 30, 2000, false},
      {"participatory_budgeting", 4, 200, 200, 100000, false},
      {"ground_truth", 2, 100, 2, 50, true},
      {"multiwinner_lab", 100, 500, 100, 500, false},
  };
  return regimes;
}

const SizeRegime& size_regime(std::string_view name) {
  for (const auto& r : size_regimes()) {
    if (r.name == name) return r;
  }
  throw std::invalid_argument("unknown regime '" + std::string(name) +
                              "' (small, political, institutional, participatory_budgeting, ground_truth, "
                              "multiwinner_lab)");
}

std::pair<int, int> sample_size(const SizeRegime& regime, Seed seed) {
  Rng rng(seed, kRegimeStream);
  const int n = log_uniform(regime.n_min, regime.n_max, rng);
  const int m_lo = regime.m_at_least_n ? std::max(n, regime.m_min) : regime.m_min;
  const int m = log_uniform(m_lo, std::max(m_lo, regime.m_max), rng);
  return {m, n};
}

}  // namespace prefforge
