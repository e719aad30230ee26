#include "amrs3/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <unordered_set>

#include "amrs3/error.hpp"

namespace amrs3 {

void AmrGraph::add_node(std::string var, std::string concept_text) {
  if (index_.contains(var)) {
    throw Error(ErrorCode::malformed_graph, "duplicate variable '" + var + "'");
  }
  index_.emplace(var, nodes_.size());
  nodes_.emplace_back(std::move(var), std::move(concept_text));
}

void AmrGraph::add_edge(Edge edge) { edges_.push_back(std::move(edge)); }

void AmrGraph::add_edge(std::string source, std::string role, EdgeTarget target) {
  edges_.push_back(Edge{std::move(source), std::move(role), std::move(target)});
}

bool AmrGraph::has_node(std::string_view var) const {
  return index_.contains(std::string(var));
}

const std::string& AmrGraph::concept_of(std::string_view var) const {
  auto it = index_.find(std::string(var));
  if (it == index_.end()) {
    throw Error(ErrorCode::unknown_variable, "unknown variable '" + std::string(var) + "'");
  }
  return nodes_[it->second].second;
}

std::unordered_map<std::string, std::vector<std::size_t>> AmrGraph::adjacency() const {
  std::unordered_map<std::string, std::vector<std::size_t>> adj;
  for (std::size_t i = 0; i < edges_.size(); ++i) adj[edges_[i].source].push_back(i);
  return adj;
}

std::vector<std::string> AmrGraph::reachable_from(const std::vector<std::string>& starts) const {
  auto adj = adjacency();
  std::unordered_set<std::string> seen;
  std::vector<std::string> order;
  std::deque<std::string> queue;
  for (const auto& s : starts) {
    if (has_node(s) && seen.insert(s).second) {
      queue.push_back(s);
      order.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::string v = std::move(queue.front());
    queue.pop_front();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (std::size_t ei : it->second) {
      const Edge& e = edges_[ei];
      if (!e.targets_node()) continue;
      if (seen.insert(e.target_var()).second) {
        queue.push_back(e.target_var());
        order.push_back(e.target_var());
      }
    }
  }
  return order;
}

void AmrGraph::validate() const {
  if (!has_node(root_)) {
    throw Error(ErrorCode::malformed_graph, "root '" + root_ + "' is not a declared node");
  }
  for (const auto& e : edges_) {
    if (!has_node(e.source)) {
      throw Error(ErrorCode::malformed_graph, "edge source '" + e.source + "' is not declared");
    }
    if (e.targets_node() && !has_node(e.target_var())) {
      throw Error(ErrorCode::malformed_graph,
                  "edge target '" + e.target_var() + "' is not declared");
    }
  }
  if (reachable_from({root_}).size() != nodes_.size()) {
    throw Error(ErrorCode::malformed_graph, "graph has nodes unreachable from root '" + root_ + "'");
  }
}

// ---------------------------------------------------------------------------

namespace {

// Ordinary roles that end in "-of" without being inverses.
constexpr std::array<std::string_view, 3> kNonInverseOf = {":consist-of", ":prep-out-of",
                                                           ":prep-on-behalf-of"};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

RoleClass classify_role(std::string_view role) {
  RoleClass rc;
  rc.role = std::string(role);
  bool ends_of = role.size() > 3 && role.ends_with("-of");
  rc.is_inverse = ends_of && std::find(kNonInverseOf.begin(), kNonInverseOf.end(), role) ==
                                 kNonInverseOf.end();
  std::string_view base = ends_of ? role.substr(0, role.size() - 3) : role;
  rc.is_core = base.starts_with(":ARG") && all_digits(base.substr(4));
  return rc;
}

std::string uninverted_role(std::string_view role) {
  if (classify_role(role).is_inverse) return std::string(role.substr(0, role.size() - 3));
  return std::string(role);
}

bool is_frame_concept(std::string_view c) {
  auto dash = c.rfind('-');
  if (dash == std::string_view::npos || dash == 0) return false;
  auto sense = c.substr(dash + 1);
  return (sense.size() == 2 || sense.size() == 3) && all_digits(sense);
}

bool is_core_concept(const AmrGraph& graph, std::string_view var) {
  return is_frame_concept(graph.concept_of(var));
}

std::string frame_lemma(std::string_view c) {
  if (!is_frame_concept(c)) return std::string(c);
  return std::string(c.substr(0, c.rfind('-')));
}

std::size_t argument_count(const AmrGraph& graph, std::string_view var) {
  graph.concept_of(var);  // throws for unknown variables
  std::size_t n = 0;
  for (const auto& e : graph.edges()) {
    bool flip = e.targets_node() && classify_role(e.role).is_inverse;
    const std::string& from = flip ? e.target_var() : e.source;
    if (from == var) ++n;
  }
  return n;
}

Deinverted deinvert(const AmrGraph& graph) {
  Deinverted out{graph, {}};
  for (auto& e : out.graph.mutable_edges()) {
    if (!e.targets_node() || !classify_role(e.role).is_inverse) continue;
    std::string new_source = e.target_var();
    e.role = uninverted_role(e.role);
    e.target = NodeRef{std::move(e.source)};
    e.source = new_source;
    if (std::find(out.candidate_roots.begin(), out.candidate_roots.end(), new_source) == out.candidate_roots.end()) {
      out.candidate_roots.push_back(std::move(new_source));
    }
  }
  if (!out.candidate_roots.empty()) {
    std::vector<std::string> starts{graph.root()};
    starts.insert(starts.end(), out.candidate_roots.begin(), out.candidate_roots.end());
    if (out.graph.reachable_from(starts).size() != out.graph.node_count()) {
      throw Error(ErrorCode::malformed_graph,
                  "edge reversal leaves nodes unreachable from every root");
    }
  }
  return out;
}

std::string constant_text(const Constant& c) {
  if (!c.quoted) return c.text;
  std::string s = "\"";
  for (char ch : c.text) {
    if (ch == '"' || ch == '\\') s += '\\';
    s += ch;
  }
  s += '"';
  return s;
}

std::vector<Triple> normalized_triples(const AmrGraph& graph) {
  std::vector<Triple> out;
  out.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    if (e.targets_node()) {
      if (classify_role(e.role).is_inverse) {
        out.push_back({graph.concept_of(e.target_var()), uninverted_role(e.role),
                       graph.concept_of(e.source)});
      } else {
        out.push_back({graph.concept_of(e.source), e.role, graph.concept_of(e.target_var())});
      }
    } else {
      out.push_back({graph.concept_of(e.source), e.role, constant_text(e.constant())});
    }
  }
  return out;
}

}  // namespace amrs3
