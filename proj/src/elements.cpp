#include "amrs3/elements.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace amrs3 {

namespace {

// Pre-order walk in stored edge direction, each node once.
template <typename Visit>
void depth_first(const AmrGraph& g, Visit&& visit) {
  auto adj = g.adjacency();
  std::unordered_set<std::string> seen;
  auto walk = [&](auto&& self, const std::string& var) -> void {
    seen.insert(var);
    visit(var);
    if (auto it = adj.find(var); it != adj.end()) {
      for (std::size_t ei : it->second) {
        const Edge& e = g.edges()[ei];
        if (e.targets_node() && !seen.contains(e.target_var())) self(self, e.target_var());
      }
    }
  };
  walk(walk, g.root());
}

// ":op12" -> 12, anything else -> -1
long op_index(std::string_view role) {
  if (!role.starts_with(":op") || role.size() == 3) return -1;
  long n = 0;
  for (char c : role.substr(3)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
    n = n * 10 + (c - '0');
  }
  return n;
}

const Edge* name_edge(const AmrGraph& g, const std::vector<std::size_t>& out) {
  for (std::size_t ei : out) {
    const Edge& e = g.edges()[ei];
    if (e.role == ":name" && e.targets_node() && g.concept_of(e.target_var()) == "name") return &e;
  }
  return nullptr;
}

std::string name_text(const AmrGraph& g, const std::vector<std::size_t>& name_out) {
  std::vector<std::pair<long, std::string>> parts;
  for (std::size_t ei : name_out) {
    const Edge& e = g.edges()[ei];
    long idx = op_index(e.role);
    if (idx >= 0 && !e.targets_node()) parts.emplace_back(idx, e.constant().text);
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string s;
  for (const auto& [idx, text] : parts) {
    if (!s.empty()) s += ' ';
    s += text;
  }
  return s;
}

std::string pad2(const std::string& v) {
  bool numeric = !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); });
  return numeric && v.size() == 1 ? "0" + v : v;
}

std::string date_text(const AmrGraph& g, const std::vector<std::size_t>& out) {
  std::string year, month, day;
  for (std::size_t ei : out) {
    const Edge& e = g.edges()[ei];
    if (e.targets_node()) continue;
    if (e.role == ":year") year = e.constant().text;
    else if (e.role == ":month") month = pad2(e.constant().text);
    else if (e.role == ":day") day = pad2(e.constant().text);
  }
  std::string s;
  for (const std::string* part : {&year, &month, &day}) {
    if (part->empty()) continue;
    if (!s.empty()) s += '-';
    s += *part;
  }
  return s;
}

}  // namespace

std::vector<std::string> extract_predicates(const AmrGraph& graph) {
  std::vector<std::string> out;
  depth_first(graph, [&](const std::string& var) {
    const auto& c = graph.concept_of(var);
    if (is_frame_concept(c)) out.push_back(frame_lemma(c));
  });
  return out;
}

std::vector<std::string> extract_entities(const AmrGraph& graph) {
  static const std::vector<std::size_t> kNone;
  auto adj = graph.adjacency();
  auto out_of = [&](const std::string& v) -> const std::vector<std::size_t>& {
    auto it = adj.find(v);
    return it == adj.end() ? kNone : it->second;
  };

  std::vector<std::string> out;
  depth_first(graph, [&](const std::string& var) {
    const auto& c = graph.concept_of(var);
    if (is_frame_concept(c) || c == "name") return;
    const auto& edges = out_of(var);
    if (const Edge* ne = name_edge(graph, edges)) {
      std::string text = name_text(graph, out_of(ne->target_var()));
      out.push_back(text.empty() ? c : c + " (" + text + ")");
    } else if (c == "date-entity") {
      std::string text = date_text(graph, edges);
      out.push_back(text.empty() ? std::string("date") : "date (" + text + ")");
    } else {
      out.push_back(c);
    }
  });
  return out;
}

ElementList extract_elements(const AmrGraph& graph) {
  return {extract_predicates(graph), extract_entities(graph)};
}

// ---------------------------------------------------------------------------

namespace {

std::string category_of(std::string_view concept_text) {
  std::string s;
  for (unsigned char c : concept_text) {
    if (std::isalnum(c)) s += static_cast<char>(std::toupper(c));
    else s += '_';
  }
  return s.empty() ? std::string("ENTITY") : s;
}

}  // namespace

Anonymized anonymize(const AmrGraph& graph) {
  auto adj = graph.adjacency();
  std::map<std::string, std::size_t> per_category;
  // name node -> placeholder token
  std::unordered_map<std::string, std::string> token_for;
  std::unordered_set<std::string> drop_wiki;
  AnonymizationMap map;

  depth_first(graph, [&](const std::string& var) {
    auto it = adj.find(var);
    if (it == adj.end()) return;
    const Edge* ne = name_edge(graph, it->second);
    if (!ne) return;
    const std::string& name_var = ne->target_var();
    drop_wiki.insert(var);
    if (token_for.contains(name_var)) return;
    auto nit = adj.find(name_var);
    if (nit == adj.end()) return;
    std::string original = name_text(graph, nit->second);
    if (original.empty()) return;
    std::string category = category_of(graph.concept_of(var));
    std::string token = category + "_" + std::to_string(per_category[category]++);
    token_for.emplace(name_var, token);
    map.entries.push_back({token, std::move(original), std::move(category)});
  });

  Anonymized out;
  out.graph.set_root(graph.root());
  for (const auto& [var, c] : graph.nodes()) out.graph.add_node(var, c);
  std::unordered_set<std::string> placed;
  for (const Edge& e : graph.edges()) {
    if (e.role == ":wiki" && drop_wiki.contains(e.source)) continue;
    auto tok = token_for.find(e.source);
    if (tok != token_for.end() && op_index(e.role) >= 0 && !e.targets_node()) {
      if (placed.insert(e.source).second) {
        out.graph.add_edge(e.source, ":op1", Constant{tok->second, true});
      }
      continue;
    }
    out.graph.add_edge(e);
  }
  out.map = std::move(map);
  return out;
}

namespace {

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::string deanonymize(std::string_view text, const AnonymizationMap& map) {
  std::vector<const Placeholder*> order;
  for (const auto& p : map.entries) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Placeholder* a, const Placeholder* b) {
    return a->token.size() > b->token.size();
  });

  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool at_boundary = i == 0 || !is_token_char(text[i - 1]);
    const Placeholder* hit = nullptr;
    if (at_boundary) {
      for (const Placeholder* p : order) {
        const auto& t = p->token;
        if (text.substr(i, t.size()) == t &&
            (i + t.size() == text.size() || !is_token_char(text[i + t.size()]))) {
          hit = p;
          break;
        }
      }
    }
    if (hit) {
      out += hit->original;
      i += hit->token.size();
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace amrs3
