#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace amrs3 {

/// Reference to a concept node by its variable.
struct NodeRef {
  std::string var;
  bool operator==(const NodeRef&) const = default;
};

/// Terminal attribute value: number, polarity, bare symbol or string literal.
/// `text` holds the unquoted value for string literals.
struct Constant {
  std::string text;
  bool quoted = false;
  bool operator==(const Constant&) const = default;
};

using EdgeTarget = std::variant<NodeRef, Constant>;

struct Edge {
  std::string source;
  std::string role;
  EdgeTarget target;

  bool targets_node() const { return std::holds_alternative<NodeRef>(target); }
  const std::string& target_var() const { return std::get<NodeRef>(target).var; }
  const Constant& constant() const { return std::get<Constant>(target); }
  bool operator==(const Edge&) const = default;
};

/// Rooted, role-labelled AMR graph. Nodes keep declaration order and edges keep
/// the order they were written in, which drives every traversal.
class AmrGraph {
 public:
  AmrGraph() = default;

  const std::string& root() const { return root_; }
  void set_root(std::string var) { root_ = std::move(var); }

  /// Declares a node. Throws malformed_graph if the variable already exists.
  void add_node(std::string var, std::string concept_text);
  void add_edge(Edge edge);
  void add_edge(std::string source, std::string role, EdgeTarget target);

  bool has_node(std::string_view var) const;
  /// Throws unknown_variable for undeclared variables.
  const std::string& concept_of(std::string_view var) const;

  const std::vector<std::pair<std::string, std::string>>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& mutable_edges() { return edges_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Outgoing edge indices per variable, in stored order.
  std::unordered_map<std::string, std::vector<std::size_t>> adjacency() const;

  /// Variables reachable from `starts` following edges in stored direction.
  std::vector<std::string> reachable_from(const std::vector<std::string>& starts) const;

  /// Checks the structural invariants (root declared, endpoints declared,
  /// everything reachable from the root). Throws malformed_graph.
  void validate() const;

 private:
  std::string root_;
  std::vector<std::pair<std::string, std::string>> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Structural queries used by the splitter.

struct RoleClass {
  std::string role;
  bool is_inverse = false;
  bool is_core = false;
};

/// Core roles are `:ARG<digits>` with an optional `-of`. Inverse roles end in
/// `-of`, except a short list of ordinary roles that merely share the suffix.
RoleClass classify_role(std::string_view role);

/// `:ARG1-of` -> `:ARG1`. Returns the role unchanged when it is not inverse.
std::string uninverted_role(std::string_view role);

/// True for frame concepts of the form `lemma-NN` or `lemma-NNN`.
bool is_frame_concept(std::string_view concept_text);
bool is_core_concept(const AmrGraph& graph, std::string_view var);

/// `move-01` -> `move`; other concepts are returned unchanged.
std::string frame_lemma(std::string_view concept_text);

/// Outgoing edges of `var` once every inverse edge has been flipped. Constant
/// attributes count.
std::size_t argument_count(const AmrGraph& graph, std::string_view var);

struct Deinverted {
  AmrGraph graph;
  /// Source endpoints (after reversal) of flipped edges, first occurrence in edge order.
  std::vector<std::string> candidate_roots;
};

/// Rewrites every inverse edge (s, r-of, t) into (t, r, s) in place within the
/// edge sequence. Inverse roles pointing at constants cannot be flipped and are
/// left untouched.
Deinverted deinvert(const AmrGraph& graph);

/// (source concept, role, target concept or constant text) with inverse edges
/// normalized to their forward direction.
struct Triple {
  std::string source_concept;
  std::string role;
  std::string target;
  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

std::vector<Triple> normalized_triples(const AmrGraph& graph);

/// Printable form of a constant, quoting string literals.
std::string constant_text(const Constant& c);

}  // namespace amrs3
