#include <algorithm>
#include <stdexcept>

#include "prefforge/election.hpp"

namespace prefforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_size(int actual, int expected, const char* what) {
  if (actual != expected) {
    throw std::invalid_argument(std::string("validate_structure: ") + what + " has size " +
                                std::to_string(actual) + ", election needs " + std::to_string(expected));
  }
}

// The relative order of each candidate pair may change at most once along
// the voter ordering.
bool single_crossing_along(const OrdinalElection& e, const Axis& voter_order) {
  const int m = e.num_candidates();
  const int n = e.num_voters();
  if (n <= 1) return true;
  std::vector<std::vector<int>> pos;
  pos.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos.push_back(e.vote(voter_order[i]).positions());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      int changes = 0;
      bool prev = pos[0][static_cast<std::size_t>(a)] < pos[0][static_cast<std::size_t>(b)];
      for (int i = 1; i < n; ++i) {
        const bool cur = pos[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] <
                         pos[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
        if (cur != prev && ++changes > 1) return false;
        prev = cur;
      }
    }
  }
  return true;
}

}  // namespace

std::string property_name(const StructureWitness& w) {
  return std::visit(overloaded{
                        [](const SinglePeaked&) { return std::string("sp"); },
                        [](const SinglePeakedOnCircle&) { return std::string("spoc"); },
                        [](const SingleCrossing&) { return std::string("sc"); },
                        [](const GroupSeparable&) { return std::string("gs"); },
                        [](const CandidateInterval&) { return std::string("ci"); },
                        [](const VoterInterval&) { return std::string("vi"); },
                    },
                    w);
}

bool is_single_peaked(const PreferenceOrder& vote, const Axis& axis) {
  const int m = vote.size();
  if (axis.size() != m) throw std::invalid_argument("is_single_peaked: axis size mismatch");
  if (m == 0) return true;
  // Every prefix of the vote must be a contiguous stretch of the axis.
  const std::vector<int> where = axis.positions();
  int left = where[static_cast<std::size_t>(vote[0])];
  int right = left;
  for (int i = 1; i < m; ++i) {
    const int p = where[static_cast<std::size_t>(vote[i])];
    if (p == left - 1) {
      left = p;
    } else if (p == right + 1) {
      right = p;
    } else {
      return false;
    }
  }
  return true;
}

bool is_single_peaked_on_circle(const PreferenceOrder& vote, const Axis& axis) {
  const int m = vote.size();
  if (axis.size() != m) throw std::invalid_argument("is_single_peaked_on_circle: axis size mismatch");
  if (m <= 2) return true;
  // Every prefix of the vote must be an arc of the cyclic axis.
  const std::vector<int> where = axis.positions();
  int left = where[static_cast<std::size_t>(vote[0])];
  int right = left;
  for (int i = 1; i < m; ++i) {
    const int p = where[static_cast<std::size_t>(vote[i])];
    const int before = (left + m - 1) % m;
    const int after = (right + 1) % m;
    if (p == before) {
      left = p;
    } else if (p == after) {
      right = p;
    } else {
      return false;
    }
  }
  return true;
}

bool is_group_separable(const PreferenceOrder& vote, const GSTree& tree) {
  if (tree.num_leaves() != vote.size()) throw std::invalid_argument("is_group_separable: tree size mismatch");
  const std::vector<int> pos = vote.positions();
  const auto& nodes = tree.nodes();
  // Per node: the span of vote positions covered by its leaves. Children are
  // processed before parents by walking a reversed preorder.
  struct Span {
    int lo, hi, count;
  };
  std::vector<Span> span(nodes.size());
  std::vector<int> order;
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (int c : tree.node(id).children) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const GSTree::Node& n = tree.node(*it);
    Span& s = span[static_cast<std::size_t>(*it)];
    if (n.is_leaf()) {
      const int p = pos[static_cast<std::size_t>(n.leaf)];
      s = {p, p, 1};
      continue;
    }
    s = {vote.size(), -1, 0};
    for (int c : n.children) {
      const Span& cs = span[static_cast<std::size_t>(c)];
      s.lo = std::min(s.lo, cs.lo);
      s.hi = std::max(s.hi, cs.hi);
      s.count += cs.count;
    }
    if (s.hi - s.lo + 1 != s.count) return false;
    // Child blocks must appear in the tree's order or exactly reversed.
    bool forward = true;
    bool backward = true;
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      const Span& prev = span[static_cast<std::size_t>(n.children[k - 1])];
      const Span& cur = span[static_cast<std::size_t>(n.children[k])];
      forward = forward && prev.hi + 1 == cur.lo;
      backward = backward && cur.hi + 1 == prev.lo;
    }
    if (!forward && !backward) return false;
  }
  return true;
}

bool is_interval(const ApprovalBallot& ballot, const Axis& axis) {
  if (ballot.empty()) return true;
  const std::vector<int> where = axis.positions();
  int lo = axis.size(), hi = -1;
  for (Candidate c : ballot) {
    if (c >= axis.size()) throw std::invalid_argument("is_interval: candidate outside axis");
    lo = std::min(lo, where[static_cast<std::size_t>(c)]);
    hi = std::max(hi, where[static_cast<std::size_t>(c)]);
  }
  return hi - lo + 1 == ballot.size();
}

bool validate_structure(const OrdinalElection& e, const StructureWitness& w) {
  const int m = e.num_candidates();
  return std::visit(
      overloaded{
          [&](const SinglePeaked& sp) {
            require_size(sp.axis.size(), m, "axis");
            return std::all_of(e.votes().begin(), e.votes().end(),
                               [&](const PreferenceOrder& v) { return is_single_peaked(v, sp.axis); });
          },
          [&](const SinglePeakedOnCircle& sp) {
            require_size(sp.axis.size(), m, "axis");
            return std::all_of(e.votes().begin(), e.votes().end(), [&](const PreferenceOrder& v) {
              return is_single_peaked_on_circle(v, sp.axis);
            });
          },
          [&](const SingleCrossing& sc) {
            require_size(sc.voter_order.size(), e.num_voters(), "voter order");
            return single_crossing_along(e, sc.voter_order);
          },
          [&](const GroupSeparable& gs) {
            require_size(gs.tree.num_leaves(), m, "tree");
            return std::all_of(e.votes().begin(), e.votes().end(),
                               [&](const PreferenceOrder& v) { return is_group_separable(v, gs.tree); });
          },
          [](const CandidateInterval&) -> bool {
            throw std::invalid_argument("validate_structure: candidate interval applies to approval elections");
          },
          [](const VoterInterval&) -> bool {
            throw std::invalid_argument("validate_structure: voter interval applies to approval elections");
          },
      },
      w);
}

bool validate_structure(const ApprovalElection& e, const StructureWitness& w) {
  if (const auto* ci = std::get_if<CandidateInterval>(&w)) {
    require_size(ci->axis.size(), e.num_candidates(), "axis");
    return std::all_of(e.ballots().begin(), e.ballots().end(),
                       [&](const ApprovalBallot& b) { return is_interval(b, ci->axis); });
  }
  if (const auto* vi = std::get_if<VoterInterval>(&w)) {
    require_size(vi->voter_order.size(), e.num_voters(), "voter order");
    // Transpose: for each candidate, the set of voter positions approving it.
    const std::vector<int> where = vi->voter_order.positions();
    const auto m = static_cast<std::size_t>(e.num_candidates());
    std::vector<int> lo(m, e.num_voters()), hi(m, -1), count(m, 0);
    for (int v = 0; v < e.num_voters(); ++v) {
      const int p = where[static_cast<std::size_t>(v)];
      for (Candidate c : e.ballot(v)) {
        const auto ci = static_cast<std::size_t>(c);
        lo[ci] = std::min(lo[ci], p);
        hi[ci] = std::max(hi[ci], p);
        ++count[ci];
      }
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (count[c] > 0 && hi[c] - lo[c] + 1 != count[c]) return false;
    }
    return true;
  }
  throw std::invalid_argument("validate_structure: " + property_name(w) +
                              " witness applies to ordinal elections");
}

}  // namespace prefforge
