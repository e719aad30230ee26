// Reference computations for tests. Deliberately written without the library's
// own helpers (role classification, canonical form, argument counting) so that
// agreement between the two is meaningful.
#pragma once

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "amrs3/graph.hpp"
#include "amrs3/splitter.hpp"

namespace oracle {

inline bool core_role(const std::string& role) {
  static const std::regex re(R"(:ARG[0-9]+(-of)?)");
  return std::regex_match(role, re);
}

inline bool inverse_role(const std::string& role) {
  static const std::set<std::string> not_inverse{":consist-of", ":prep-out-of", ":prep-on-behalf-of"};
  return role.size() > 3 && role.ends_with("-of") && !not_inverse.contains(role);
}

inline bool frame(const std::string& concept_text) {
  static const std::regex re(R"(.+-[0-9]{2,3})");
  return std::regex_match(concept_text, re);
}

struct FlatEdge {
  std::string from, role, to;  // `to` is "#const:<text>" for constants
  bool to_node;
};

inline std::string key(const amrs3::Edge& e) {
  if (e.targets_node()) return e.target_var();
  return std::string(e.constant().quoted ? "#q:" : "#s:") + e.constant().text;
}

inline std::vector<FlatEdge> flat(const amrs3::AmrGraph& g) {
  std::vector<FlatEdge> out;
  for (const auto& e : g.edges()) out.push_back({e.source, e.role, key(e), e.targets_node()});
  return out;
}

// Argument count per variable with inverse node edges read backwards.
inline std::map<std::string, std::size_t> arguments(const amrs3::AmrGraph& g) {
  std::map<std::string, std::size_t> n;
  for (const auto& e : flat(g)) {
    bool flip = e.to_node && inverse_role(e.role);
    ++n[flip ? e.to : e.from];
  }
  return n;
}

inline std::size_t max_arguments(const amrs3::AmrGraph& g) {
  std::size_t m = 0;
  for (const auto& [v, k] : arguments(g)) m = std::max(m, k);
  return m;
}

// Targets of inverse node edges, in edge order, deduplicated.
inline std::vector<std::string> rule3_candidates(const amrs3::AmrGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : flat(g)) {
    if (e.to_node && inverse_role(e.role) && std::find(out.begin(), out.end(), e.to) == out.end()) {
      out.push_back(e.to);
    }
  }
  return out;
}

// Roots the splitter must promote under Rule 1: predicates with more than
// sigma arguments that are neither already a root nor childless in the
// traversal view.
inline std::set<std::string> rule1_roots(const amrs3::AmrGraph& g, const amrs3::SplitConfig& cfg) {
  auto args = arguments(g);
  std::set<std::string> exclude{g.root()};
  if (cfg.apply_rule3) {
    for (const auto& c : rule3_candidates(g)) exclude.insert(c);
  }
  std::set<std::string> has_children;
  for (const auto& e : flat(g)) {
    bool flip = cfg.apply_rule3 && e.to_node && inverse_role(e.role);
    has_children.insert(flip ? e.to : e.from);
  }
  std::set<std::string> out;
  for (const auto& [var, c] : g.nodes()) {
    if (exclude.contains(var) || !frame(c) || args[var] <= cfg.sigma) continue;
    if (!has_children.contains(var)) continue;
    out.insert(var);
  }
  return out;
}

inline double coverage(const amrs3::AmrGraph& input, const std::vector<amrs3::AmrGraph>& parts) {
  std::set<std::string> seen;
  for (const auto& p : parts) {
    for (const auto& [v, c] : p.nodes()) seen.insert(v);
  }
  std::size_t hit = 0;
  for (const auto& [v, c] : input.nodes()) hit += seen.contains(v) ? 1 : 0;
  return input.node_count() == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(input.node_count());
}

// Backtracking search for a variable bijection preserving root, concepts and
// the edge multiset. Exponential in the worst case; fine for fixtures.
inline bool isomorphic(const amrs3::AmrGraph& a, const amrs3::AmrGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  if (a.root().empty() != b.root().empty()) return false;

  std::vector<std::string> av;
  std::unordered_map<std::string, std::string> ac, bc;
  for (const auto& [v, c] : a.nodes()) {
    av.push_back(v);
    ac[v] = c;
  }
  for (const auto& [v, c] : b.nodes()) bc[v] = c;

  auto ae = flat(a), be = flat(b);
  std::multiset<std::tuple<std::string, std::string, std::string>> target;
  for (const auto& e : be) target.emplace(e.from, e.role, e.to);

  // Try the root first so the search prunes early.
  std::stable_partition(av.begin(), av.end(), [&](const std::string& v) { return v == a.root(); });

  std::unordered_map<std::string, std::string> fwd;
  std::set<std::string> used;

  auto consistent = [&]() {
    // Every a-edge whose endpoints are both mapped must exist in b (counted).
    std::multiset<std::tuple<std::string, std::string, std::string>> need;
    for (const auto& e : ae) {
      auto s = fwd.find(e.from);
      if (s == fwd.end()) continue;
      std::string to = e.to;
      if (e.to_node) {
        auto t = fwd.find(e.to);
        if (t == fwd.end()) continue;
        to = t->second;
      }
      need.emplace(s->second, e.role, to);
    }
    for (auto it = need.begin(); it != need.end(); it = need.upper_bound(*it)) {
      if (target.count(*it) < need.count(*it)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == av.size()) return true;
    const std::string& v = av[i];
    for (const auto& [w, c] : b.nodes()) {
      if (used.contains(w) || c != ac[v]) continue;
      if (v == a.root() && w != b.root()) continue;
      fwd[v] = w;
      used.insert(w);
      if (consistent() && self(self, i + 1)) return true;
      fwd.erase(v);
      used.erase(w);
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace oracle
