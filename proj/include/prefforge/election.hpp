#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace prefforge {

// Candidates (and voters) are dense indices 0..m-1. Display names live in
// side tables owned by the file-format layer.
using Candidate = int;

// A strict ranking, most-preferred candidate first.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  // Throws std::invalid_argument unless `ranking` is a permutation of 0..m-1.
  explicit PreferenceOrder(std::vector<Candidate> ranking);

  static PreferenceOrder identity(int m);

  int size() const { return static_cast<int>(ranking_.size()); }
  Candidate operator[](int position) const { return ranking_[static_cast<std::size_t>(position)]; }
  std::span<const Candidate> ranking() const { return ranking_; }
  auto begin() const { return ranking_.begin(); }
  auto end() const { return ranking_.end(); }

  // positions()[c] is the rank (0 = top) of candidate c.
  std::vector<int> positions() const;
  PreferenceOrder reversed() const;
  // Candidate c is renamed to mapping[c].
  PreferenceOrder relabeled(std::span<const Candidate> mapping) const;

  std::string to_string() const;

  friend bool operator==(const PreferenceOrder&, const PreferenceOrder&) = default;
  friend auto operator<=>(const PreferenceOrder&, const PreferenceOrder&) = default;

 private:
  std::vector<Candidate> ranking_;
};

// A set of approved candidates, kept sorted.
class ApprovalBallot {
 public:
  ApprovalBallot() = default;
  // Sorts the input; throws on negative ids or duplicates.
  explicit ApprovalBallot(std::vector<Candidate> approved);

  int size() const { return static_cast<int>(approved_.size()); }
  bool empty() const { return approved_.empty(); }
  bool contains(Candidate c) const;
  std::span<const Candidate> approved() const { return approved_; }
  auto begin() const { return approved_.begin(); }
  auto end() const { return approved_.end(); }

  friend bool operator==(const ApprovalBallot&, const ApprovalBallot&) = default;
  friend auto operator<=>(const ApprovalBallot&, const ApprovalBallot&) = default;

 private:
  std::vector<Candidate> approved_;
};

class OrdinalElection {
 public:
  OrdinalElection() = default;
  // m >= 1 and every vote ranks exactly m candidates.
  OrdinalElection(int num_candidates, std::vector<PreferenceOrder> votes);

  int num_candidates() const { return num_candidates_; }
  int num_voters() const { return static_cast<int>(votes_.size()); }
  const std::vector<PreferenceOrder>& votes() const { return votes_; }
  const PreferenceOrder& vote(int i) const { return votes_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const OrdinalElection&, const OrdinalElection&) = default;

 private:
  int num_candidates_ = 1;
  std::vector<PreferenceOrder> votes_;
};

class ApprovalElection {
 public:
  ApprovalElection() = default;
  ApprovalElection(int num_candidates, std::vector<ApprovalBallot> ballots);

  int num_candidates() const { return num_candidates_; }
  int num_voters() const { return static_cast<int>(ballots_.size()); }
  const std::vector<ApprovalBallot>& ballots() const { return ballots_; }
  const ApprovalBallot& ballot(int i) const { return ballots_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const ApprovalElection&, const ApprovalElection&) = default;

 private:
  int num_candidates_ = 1;
  std::vector<ApprovalBallot> ballots_;
};

// Renames candidate c to candidate_map[c] in every vote and reorders voters
// so that output vote i is input vote voter_order[i].
OrdinalElection relabel(const OrdinalElection& e, std::span<const Candidate> candidate_map,
                        std::span<const int> voter_order);

// A permutation of 0..k-1: a societal axis over candidates or an ordering of
// voters, depending on where it is used.
class Axis {
 public:
  Axis() = default;
  explicit Axis(std::vector<int> order);
  static Axis identity(int size);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }
  std::span<const int> order() const { return order_; }
  // positions()[x] is where x sits on the axis.
  std::vector<int> positions() const;

  friend bool operator==(const Axis&, const Axis&) = default;

 private:
  std::vector<int> order_;
};

enum class TreeKind { balanced, caterpillar };

// Rooted, ordered tree whose leaves are the candidates.
class GSTree {
 public:
  struct Node {
    Candidate leaf = -1;        // >= 0 for leaves
    std::vector<int> children;  // node indices, left to right
    bool is_leaf() const { return leaf >= 0; }
    friend bool operator==(const Node&, const Node&) = default;
  };

  GSTree() = default;
  // Validates the shape against `kind`; throws std::invalid_argument.
  GSTree(TreeKind kind, std::vector<Node> nodes, int root);

  // Binary tree splitting the frontier in halves at every level.
  static GSTree balanced(std::span<const Candidate> frontier);
  // Binary tree in which every internal node has a leaf as its left child.
  static GSTree caterpillar(std::span<const Candidate> frontier);

  TreeKind kind() const { return kind_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int root() const { return root_; }
  int num_leaves() const { return num_leaves_; }
  std::vector<int> internal_nodes() const;

  // Leaves read left to right; flipped[id] reverses the children of node id.
  std::vector<Candidate> frontier() const;
  std::vector<Candidate> frontier(const std::vector<bool>& flipped) const;

  friend bool operator==(const GSTree&, const GSTree&) = default;

 private:
  TreeKind kind_ = TreeKind::balanced;
  std::vector<Node> nodes_;
  int root_ = -1;
  int num_leaves_ = 0;
};

struct SinglePeaked {
  Axis axis;
};
struct SinglePeakedOnCircle {
  Axis axis;
};
struct SingleCrossing {
  Axis voter_order;
};
struct GroupSeparable {
  GSTree tree;
};
struct CandidateInterval {
  Axis axis;
};
struct VoterInterval {
  Axis voter_order;
};

using StructureWitness = std::variant<SinglePeaked, SinglePeakedOnCircle, SingleCrossing,
                                      GroupSeparable, CandidateInterval, VoterInterval>;

// Short property tag: "sp", "spoc", "sc", "gs", "ci", "vi".
std::string property_name(const StructureWitness& w);

// Vote-level checks.
bool is_single_peaked(const PreferenceOrder& vote, const Axis& axis);
bool is_single_peaked_on_circle(const PreferenceOrder& vote, const Axis& axis);
bool is_group_separable(const PreferenceOrder& vote, const GSTree& tree);
bool is_interval(const ApprovalBallot& ballot, const Axis& axis);

// True iff every vote satisfies the structure certified by the witness.
// Throws std::invalid_argument when the witness does not apply to this kind
// of election or its dimensions do not match.
bool validate_structure(const OrdinalElection& e, const StructureWitness& w);
bool validate_structure(const ApprovalElection& e, const StructureWitness& w);

}  // namespace prefforge
