#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "prefforge/metrics.hpp"

namespace prefforge {

namespace {

void require_same_shape(const OrdinalElection& a, const OrdinalElection& b, const char* who) {
  if (a.num_candidates() != b.num_candidates() || a.num_voters() != b.num_voters()) {
    throw std::invalid_argument(std::string(who) + ": elections differ in size (" +
                                std::to_string(a.num_candidates()) + "x" + std::to_string(a.num_voters()) + " vs " +
                                std::to_string(b.num_candidates()) + "x" + std::to_string(b.num_voters()) + ")");
  }
}

// One bit per unordered candidate pair {x < y}: set iff x is ranked above y.
// The swap distance of two votes is the popcount of the xor of their
// signatures.
class PairSignatures {
 public:
  PairSignatures(int m, int n)
      : m_(m), words_((static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2 + 63) / 64),
        bits_(static_cast<std::size_t>(n) * words_, 0) {}

  // Signature of the vote whose candidate c sits at rank position[c].
  void assign(int voter, std::span<const int> position) {
    std::uint64_t* w = row(voter);
    std::fill(w, w + words_, 0);
    std::size_t bit = 0;
    for (int x = 0; x < m_; ++x) {
      for (int y = x + 1; y < m_; ++y, ++bit) {
        if (position[static_cast<std::size_t>(x)] < position[static_cast<std::size_t>(y)]) {
          w[bit / 64] |= std::uint64_t{1} << (bit % 64);
        }
      }
    }
  }

  std::int64_t distance(const PairSignatures& other, int i, int j) const {
    const std::uint64_t* a = row(i);
    const std::uint64_t* b = other.row(j);
    std::int64_t d = 0;
    for (std::size_t k = 0; k < words_; ++k) d += std::popcount(a[k] ^ b[k]);
    return d;
  }

 private:
  std::uint64_t* row(int voter) { return bits_.data() + static_cast<std::size_t>(voter) * words_; }
  const std::uint64_t* row(int voter) const { return bits_.data() + static_cast<std::size_t>(voter) * words_; }

  int m_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Evaluates candidate relabelings of `a` against a fixed `b`.
class RelabelingCost {
 public:
  RelabelingCost(const OrdinalElection& a, const OrdinalElection& b)
      : m_(a.num_candidates()), n_(a.num_voters()), a_sig_(m_, n_), b_sig_(m_, n_),
        cost_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)), mapped_(static_cast<std::size_t>(m_)) {
    for (int i = 0; i < n_; ++i) {
      a_pos_.push_back(a.vote(i).positions());
      b_sig_.assign(i, b.vote(i).positions());
    }
  }

  std::int64_t operator()(std::span<const Candidate> relabeling) { return solve(relabeling).cost; }

  Assignment solve(std::span<const Candidate> relabeling) {
    fill(relabeling);
    return min_cost_assignment(cost_, static_cast<std::size_t>(n_));
  }

  // Optimal cost if it is below `cutoff`, otherwise some value >= cutoff.
  std::int64_t solve_below(std::span<const Candidate> relabeling, std::int64_t cutoff) {
    fill(relabeling);
    const auto nn = static_cast<std::size_t>(n_);
    std::int64_t rows = 0, cols = 0;
    for (std::size_t i = 0; i < nn; ++i) {
      std::int64_t rmin = std::numeric_limits<std::int64_t>::max();
      std::int64_t cmin = rmin;
      for (std::size_t j = 0; j < nn; ++j) {
        rmin = std::min(rmin, cost_[i * nn + j]);
        cmin = std::min(cmin, cost_[j * nn + i]);
      }
      rows += rmin;
      cols += cmin;
    }
    const std::int64_t bound = std::max(rows, cols);
    if (bound >= cutoff) return bound;
    return min_cost_assignment(cost_, nn).cost;
  }

  // Cost of the relabeling under a fixed voter matching.
  std::int64_t matched(std::span<const Candidate> relabeling, std::span<const int> column_of_row) {
    sign(relabeling);
    std::int64_t total = 0;
    for (int i = 0; i < n_; ++i) total += a_sig_.distance(b_sig_, i, column_of_row[static_cast<std::size_t>(i)]);
    return total;
  }

 private:
  void sign(std::span<const Candidate> relabeling) {
    for (int i = 0; i < n_; ++i) {
      const auto& pos = a_pos_[static_cast<std::size_t>(i)];
      for (int c = 0; c < m_; ++c) mapped_[static_cast<std::size_t>(relabeling[static_cast<std::size_t>(c)])] = pos[static_cast<std::size_t>(c)];
      a_sig_.assign(i, mapped_);
    }
  }

  void fill(std::span<const Candidate> relabeling) {
    sign(relabeling);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        cost_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] = a_sig_.distance(b_sig_, i, j);
      }
    }
  }

  int m_;
  int n_;
  std::vector<std::vector<int>> a_pos_;
  PairSignatures a_sig_;
  PairSignatures b_sig_;
  std::vector<std::int64_t> cost_;
  std::vector<int> mapped_;
};

// Transposition descent. Moves are first tried against the current voter
// matching, which is cheap; once no such move helps, the full neighbourhood
// is evaluated with re-optimized matchings. Stops at a relabeling that no
// single transposition improves.
std::pair<std::int64_t, std::vector<Candidate>> descend(RelabelingCost& eval, std::vector<Candidate> sigma) {
  const int m = static_cast<int>(sigma.size());
  Assignment current = eval.solve(sigma);
  while (current.cost > 0) {
    std::int64_t cost = current.cost;
    bool moved = false;
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) {
        std::swap(sigma[static_cast<std::size_t>(x)], sigma[static_cast<std::size_t>(y)]);
        const std::int64_t c = eval.matched(sigma, current.column_of_row);
        if (c < cost) {
          cost = c;
          moved = true;
        } else {
          std::swap(sigma[static_cast<std::size_t>(x)], sigma[static_cast<std::size_t>(y)]);
        }
      }
    }
    if (moved) {
      current = eval.solve(sigma);
      continue;
    }

    std::int64_t best = current.cost;
    int bx = -1, by = -1;
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) {
        std::swap(sigma[static_cast<std::size_t>(x)], sigma[static_cast<std::size_t>(y)]);
        const std::int64_t c = eval.solve_below(sigma, best);
        std::swap(sigma[static_cast<std::size_t>(x)], sigma[static_cast<std::size_t>(y)]);
        if (c < best) {
          best = c;
          bx = x;
          by = y;
        }
      }
    }
    if (bx < 0) break;
    std::swap(sigma[static_cast<std::size_t>(bx)], sigma[static_cast<std::size_t>(by)]);
    current = eval.solve(sigma);
  }
  return {current.cost, std::move(sigma)};
}

// Depth-first search over candidate maps a -> b in lexicographic order.
// Pairs among already-mapped candidates give a partial voter-vs-voter cost
// matrix whose optimal assignment lower-bounds every completion.
class ExactSearch {
 public:
  ExactSearch(const OrdinalElection& a, const OrdinalElection& b, std::int64_t upper_bound)
      : m_(a.num_candidates()), n_(a.num_voters()), best_(upper_bound) {
    for (int i = 0; i < n_; ++i) {
      a_pos_.push_back(a.vote(i).positions());
      b_pos_.push_back(b.vote(i).positions());
    }
    const auto nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    levels_.assign(static_cast<std::size_t>(m_) + 1, std::vector<std::int64_t>(nn, 0));
    map_.assign(static_cast<std::size_t>(m_), -1);
    used_.assign(static_cast<std::size_t>(m_), false);
    a_mask_.assign(static_cast<std::size_t>(m_), std::vector<std::uint64_t>(static_cast<std::size_t>(n_)));
    b_mask_.resize(static_cast<std::size_t>(n_));
  }

  std::int64_t run() {
    search(0);
    return best_;
  }

 private:
  void search(int depth) {
    const auto nn = static_cast<std::size_t>(n_);
    const auto d = static_cast<std::size_t>(depth);
    for (int i = 0; i < n_; ++i) {
      // Bit k: a's candidate `depth` is above a's candidate k in vote i.
      std::uint64_t mask = 0;
      const auto& pos = a_pos_[static_cast<std::size_t>(i)];
      for (int k = 0; k < depth; ++k) {
        if (pos[d] < pos[static_cast<std::size_t>(k)]) mask |= std::uint64_t{1} << k;
      }
      a_mask_[d][static_cast<std::size_t>(i)] = mask;
    }
    for (int t = 0; t < m_; ++t) {
      if (used_[static_cast<std::size_t>(t)]) continue;
      for (int j = 0; j < n_; ++j) {
        std::uint64_t mask = 0;
        const auto& pos = b_pos_[static_cast<std::size_t>(j)];
        for (int k = 0; k < depth; ++k) {
          if (pos[static_cast<std::size_t>(t)] < pos[static_cast<std::size_t>(map_[static_cast<std::size_t>(k)])]) {
            mask |= std::uint64_t{1} << k;
          }
        }
        b_mask_[static_cast<std::size_t>(j)] = mask;
      }
      const auto& a_mask = a_mask_[d];
      const auto& prev = levels_[d];
      auto& next = levels_[d + 1];
      for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) {
          next[i * nn + j] = prev[i * nn + j] + std::popcount(a_mask[i] ^ b_mask_[j]);
        }
      }
      if (!promising(next)) continue;
      map_[d] = t;
      used_[static_cast<std::size_t>(t)] = true;
      if (depth + 1 == m_) {
        best_ = std::min(best_, min_cost_assignment(next, nn).cost);
      } else {
        search(depth + 1);
      }
      used_[static_cast<std::size_t>(t)] = false;
      map_[d] = -1;
    }
  }

  bool promising(const std::vector<std::int64_t>& cost) const {
    const auto nn = static_cast<std::size_t>(n_);
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    for (std::size_t i = 0; i < nn; ++i) {
      std::int64_t rmin = std::numeric_limits<std::int64_t>::max();
      std::int64_t cmin = std::numeric_limits<std::int64_t>::max();
      for (std::size_t j = 0; j < nn; ++j) {
        rmin = std::min(rmin, cost[i * nn + j]);
        cmin = std::min(cmin, cost[j * nn + i]);
      }
      rows += rmin;
      cols += cmin;
    }
    if (std::max(rows, cols) >= best_) return false;
    return min_cost_assignment(cost, nn).cost < best_;
  }

  int m_;
  int n_;
  std::int64_t best_;
  std::vector<std::vector<int>> a_pos_;
  std::vector<std::vector<int>> b_pos_;
  std::vector<std::vector<std::int64_t>> levels_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<std::vector<std::uint64_t>> a_mask_;  // per depth
  std::vector<std::uint64_t> b_mask_;
};

}  // namespace

std::int64_t matched_swap_cost(const OrdinalElection& a, const OrdinalElection& b,
                               std::span<const Candidate> relabeling) {
  require_same_shape(a, b, "matched_swap_cost");
  if (static_cast<int>(relabeling.size()) != a.num_candidates()) {
    throw std::invalid_argument("matched_swap_cost: relabeling has the wrong size");
  }
  Axis check(std::vector<int>(relabeling.begin(), relabeling.end()));  // throws unless a permutation
  RelabelingCost eval(a, b);
  return eval(relabeling);
}

HeuristicDistance election_distance_heuristic(const OrdinalElection& a, const OrdinalElection& b, int restarts,
                                              Seed seed) {
  require_same_shape(a, b, "election_distance_heuristic");
  const int m = a.num_candidates();
  HeuristicDistance out;
  out.relabeling.resize(static_cast<std::size_t>(m));
  std::iota(out.relabeling.begin(), out.relabeling.end(), 0);
  if (a.num_voters() == 0) return out;

  RelabelingCost eval(a, b);
  out.value = std::numeric_limits<std::int64_t>::max();
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::vector<Candidate> start(static_cast<std::size_t>(m));
    if (r == 0) {
      std::iota(start.begin(), start.end(), 0);
    } else {
      Rng rng(seed, static_cast<std::uint64_t>(r));
      start = rng.permutation(m);
    }
    auto [cost, sigma] = descend(eval, std::move(start));
    if (cost < out.value) {
      out.value = cost;
      out.relabeling = std::move(sigma);
    }
    if (out.value == 0) break;
  }
  return out;
}

std::int64_t election_distance_exact(const OrdinalElection& a, const OrdinalElection& b,
                                     const ExactDistanceOptions& options) {
  require_same_shape(a, b, "election_distance_exact");
  const int m = a.num_candidates();
  if (m > 8 && !options.allow_large) {
    throw std::invalid_argument("election_distance_exact: m = " + std::to_string(m) +
                                " exceeds 8; enumeration over m! relabelings is too costly "
                                "(set allow_large or use the heuristic)");
  }
  if (m > 64) throw std::invalid_argument("election_distance_exact: m > 64 is not supported");
  if (a.num_voters() == 0 || m == 1) return 0;
  // The identity relabeling is the initial incumbent.
  std::vector<Candidate> identity(static_cast<std::size_t>(m));
  std::iota(identity.begin(), identity.end(), 0);
  RelabelingCost eval(a, b);
  const std::int64_t upper = eval(identity);
  if (upper == 0) return 0;
  ExactSearch search(a, b, upper);
  return search.run();
}

}  // namespace prefforge
