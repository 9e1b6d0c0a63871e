#include "prefforge/election.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prefforge {

namespace {

bool is_permutation_of_range(std::span<const int> values) {
  std::vector<bool> seen(values.size(), false);
  for (int v : values) {
    if (v < 0 || static_cast<std::size_t>(v) >= values.size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

}  // namespace

PreferenceOrder::PreferenceOrder(std::vector<Candidate> ranking) : ranking_(std::move(ranking)) {
  if (!is_permutation_of_range(ranking_)) {
    throw std::invalid_argument("PreferenceOrder: ranking is not a permutation of 0.." +
                                std::to_string(static_cast<long>(ranking_.size()) - 1));
  }
}

PreferenceOrder PreferenceOrder::identity(int m) {
  std::vector<Candidate> r(static_cast<std::size_t>(m));
  std::iota(r.begin(), r.end(), 0);
  return PreferenceOrder(std::move(r));
}

std::vector<int> PreferenceOrder::positions() const {
  std::vector<int> pos(ranking_.size());
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    pos[static_cast<std::size_t>(ranking_[i])] = static_cast<int>(i);
  }
  return pos;
}

PreferenceOrder PreferenceOrder::reversed() const {
  return PreferenceOrder(std::vector<Candidate>(ranking_.rbegin(), ranking_.rend()));
}

PreferenceOrder PreferenceOrder::relabeled(std::span<const Candidate> mapping) const {
  if (mapping.size() != ranking_.size()) {
    throw std::invalid_argument("PreferenceOrder::relabeled: mapping size mismatch");
  }
  std::vector<Candidate> r;
  r.reserve(ranking_.size());
  for (Candidate c : ranking_) r.push_back(mapping[static_cast<std::size_t>(c)]);
  return PreferenceOrder(std::move(r));
}

std::string PreferenceOrder::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    if (i) os << '>';
    os << ranking_[i];
  }
  return os.str();
}

ApprovalBallot::ApprovalBallot(std::vector<Candidate> approved) : approved_(std::move(approved)) {
  std::sort(approved_.begin(), approved_.end());
  if (!approved_.empty() && approved_.front() < 0) {
    throw std::invalid_argument("ApprovalBallot: negative candidate index");
  }
  if (std::adjacent_find(approved_.begin(), approved_.end()) != approved_.end()) {
    throw std::invalid_argument("ApprovalBallot: duplicate candidate");
  }
}

bool ApprovalBallot::contains(Candidate c) const {
  return std::binary_search(approved_.begin(), approved_.end(), c);
}

OrdinalElection::OrdinalElection(int num_candidates, std::vector<PreferenceOrder> votes)
    : num_candidates_(num_candidates), votes_(std::move(votes)) {
  if (num_candidates_ < 1) throw std::invalid_argument("OrdinalElection: need at least one candidate");
  for (std::size_t i = 0; i < votes_.size(); ++i) {
    if (votes_[i].size() != num_candidates_) {
      throw std::invalid_argument("OrdinalElection: vote " + std::to_string(i) + " ranks " +
                                  std::to_string(votes_[i].size()) + " candidates, expected " +
                                  std::to_string(num_candidates_));
    }
  }
}

ApprovalElection::ApprovalElection(int num_candidates, std::vector<ApprovalBallot> ballots)
    : num_candidates_(num_candidates), ballots_(std::move(ballots)) {
  if (num_candidates_ < 1) throw std::invalid_argument("ApprovalElection: need at least one candidate");
  for (std::size_t i = 0; i < ballots_.size(); ++i) {
    if (!ballots_[i].empty() && ballots_[i].approved().back() >= num_candidates_) {
      throw std::invalid_argument("ApprovalElection: ballot " + std::to_string(i) +
                                  " approves a candidate outside 0.." +
                                  std::to_string(num_candidates_ - 1));
    }
  }
}

OrdinalElection relabel(const OrdinalElection& e, std::span<const Candidate> candidate_map,
                        std::span<const int> voter_order) {
  if (static_cast<int>(candidate_map.size()) != e.num_candidates() ||
      static_cast<int>(voter_order.size()) != e.num_voters()) {
    throw std::invalid_argument("relabel: mapping sizes do not match the election");
  }
  if (!is_permutation_of_range(candidate_map) || !is_permutation_of_range(voter_order)) {
    throw std::invalid_argument("relabel: mappings must be permutations");
  }
  std::vector<PreferenceOrder> votes;
  votes.reserve(voter_order.size());
  for (int i : voter_order) votes.push_back(e.vote(i).relabeled(candidate_map));
  return OrdinalElection(e.num_candidates(), std::move(votes));
}

Axis::Axis(std::vector<int> order) : order_(std::move(order)) {
  if (!is_permutation_of_range(order_)) throw std::invalid_argument("Axis: not a permutation");
}

Axis Axis::identity(int size) {
  std::vector<int> o(static_cast<std::size_t>(size));
  std::iota(o.begin(), o.end(), 0);
  return Axis(std::move(o));
}

std::vector<int> Axis::positions() const {
  std::vector<int> pos(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) pos[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
  return pos;
}

}  // namespace prefforge
