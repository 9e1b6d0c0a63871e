#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "prefforge/metrics.hpp"

namespace prefforge {

namespace {

std::int64_t count_inversions(std::vector<int>& a, std::vector<int>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(a, scratch, lo, mid) + count_inversions(a, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      scratch[k++] = a[i++];
    } else {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = a[j++];
    }
  }
  while (i < mid) scratch[k++] = a[i++];
  while (j < hi) scratch[k++] = a[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t size, std::vector<double> entries)
    : size_(size), entries_(std::move(entries)) {
  if (entries_.size() != size_ * size_) throw std::invalid_argument("DistanceMatrix: wrong number of entries");
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)(i, i) != 0.0) throw std::invalid_argument("DistanceMatrix: nonzero diagonal");
    for (std::size_t j = 0; j < size_; ++j) {
      const double d = (*this)(i, j);
      if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("DistanceMatrix: negative or non-finite entry");
      if (d != (*this)(j, i)) throw std::invalid_argument("DistanceMatrix: not symmetric");
    }
  }
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    if (value != 0.0) throw std::invalid_argument("DistanceMatrix: diagonal must be zero");
    return;
  }
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("DistanceMatrix: negative or non-finite entry");
  entries_[i * size_ + j] = value;
  entries_[j * size_ + i] = value;
}

std::int64_t swap_distance(const PreferenceOrder& u, const PreferenceOrder& v) {
  if (u.size() != v.size()) throw std::invalid_argument("swap_distance: orders have different lengths");
  // Positions in v of u's candidates, read in u's order; each inversion is a
  // disagreeing pair.
  const std::vector<int> pos_v = v.positions();
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(u.size()));
  for (Candidate c : u) seq.push_back(pos_v[static_cast<std::size_t>(c)]);
  std::vector<int> scratch(seq.size());
  return count_inversions(seq, scratch, 0, seq.size());
}

double ballot_distance(const ApprovalBallot& u, const ApprovalBallot& v, BallotMetric metric) {
  std::vector<Candidate> common;
  std::set_intersection(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(common));
  const auto inter = static_cast<double>(common.size());
  const double uni = u.size() + v.size() - inter;
  if (metric == BallotMetric::hamming) return uni - inter;
  return uni == 0.0 ? 0.0 : 1.0 - inter / uni;
}

VoteDistances vote_distance_matrix(const OrdinalElection& e, bool deduplicate) {
  VoteDistances out;
  if (deduplicate) {
    std::map<PreferenceOrder, std::size_t> index;
    for (const auto& v : e.votes()) {
      const auto [it, inserted] = index.emplace(v, out.votes.size());
      if (inserted) {
        out.votes.push_back(v);
        out.multiplicities.push_back(1);
      } else {
        ++out.multiplicities[it->second];
      }
    }
  } else {
    out.votes = e.votes();
    out.multiplicities.assign(out.votes.size(), 1);
  }
  const std::size_t k = out.votes.size();
  out.distances = DistanceMatrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      out.distances.set(i, j, static_cast<double>(swap_distance(out.votes[i], out.votes[j])));
    }
  }
  return out;
}

}  // namespace prefforge
