#include <stdexcept>

#include "prefforge/cli.hpp"

namespace prefforge {

namespace {

using nlohmann::json;

json tree_json(const GSTree& t, int id) {
  const auto& node = t.node(id);
  if (node.is_leaf()) return node.leaf;
  json children = json::array();
  for (int c : node.children) children.push_back(tree_json(t, c));
  return children;
}

int tree_from_json(const json& j, std::vector<GSTree::Node>& nodes) {
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (j.is_number_integer()) {
    nodes[static_cast<std::size_t>(id)].leaf = j.get<int>();
    return id;
  }
  if (!j.is_array()) throw std::invalid_argument("witness: tree nodes must be integers or arrays");
  std::vector<int> children;
  for (const auto& c : j) children.push_back(tree_from_json(c, nodes));
  nodes[static_cast<std::size_t>(id)].children = std::move(children);
  return id;
}

Axis axis_from(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("witness: missing '") + key + "'");
  return Axis(j.at(key).get<std::vector<int>>());
}

}  // namespace

std::string witness_to_json(const StructureWitness& w) {
  json j;
  j["property"] = property_name(w);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SinglePeaked> || std::is_same_v<T, SinglePeakedOnCircle> ||
                      std::is_same_v<T, CandidateInterval>) {
          j["axis"] = std::vector<int>(x.axis.order().begin(), x.axis.order().end());
        } else if constexpr (std::is_same_v<T, SingleCrossing> || std::is_same_v<T, VoterInterval>) {
          j["voter_order"] = std::vector<int>(x.voter_order.order().begin(), x.voter_order.order().end());
        } else {
          j["kind"] = x.tree.kind() == TreeKind::balanced ? "balanced" : "caterpillar";
          j["tree"] = tree_json(x.tree, x.tree.root());
        }
      },
      w);
  return j.dump() + "\n";
}

StructureWitness witness_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("witness: ") + e.what());
  }
  try {
    const std::string property = j.at("property").get<std::string>();
    if (property == "sp") return SinglePeaked{axis_from(j, "axis")};
    if (property == "spoc") return SinglePeakedOnCircle{axis_from(j, "axis")};
    if (property == "ci") return CandidateInterval{axis_from(j, "axis")};
    if (property == "sc") return SingleCrossing{axis_from(j, "voter_order")};
    if (property == "vi") return VoterInterval{axis_from(j, "voter_order")};
    if (property == "gs") {
      const std::string kind = j.at("kind").get<std::string>();
      TreeKind k;
      if (kind == "balanced") {
        k = TreeKind::balanced;
      } else if (kind == "caterpillar") {
        k = TreeKind::caterpillar;
      } else {
        throw std::invalid_argument("witness: unknown tree kind '" + kind + "'");
      }
      std::vector<GSTree::Node> nodes;
      const int root = tree_from_json(j.at("tree"), nodes);
      return GroupSeparable{GSTree(k, std::move(nodes), root)};
    }
    throw std::invalid_argument("witness: unknown property '" + property + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("witness: ") + e.what());
  }
}

}  // namespace prefforge
