#include "amrs3/splitter.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace amrs3 {

std::string_view to_string(SubgraphOrigin origin) {
  switch (origin) {
    case SubgraphOrigin::original_root: return "original-root";
    case SubgraphOrigin::rule1: return "rule1";
    case SubgraphOrigin::rule3: return "rule3";
  }
  return "unknown";
}

namespace {

class Splitter {
 public:
  Splitter(const AmrGraph& input, const SplitConfig& config) : config_(config) {
    Deinverted d = deinvert(input);
    // Argument counts always use the flipped orientation: `x :ARG1-of p` is
    // an argument of p whether or not Rule 3 reroots p.
    for (const auto& e : d.graph.edges()) ++args_[e.source];
    if (config.apply_rule3) {
      view_ = std::move(d.graph);
      candidates_ = std::move(d.candidate_roots);
    } else {
      view_ = input;
    }
    adj_ = view_.adjacency();
  }

  SplitResult run() {
    enqueue(view_.root(), SubgraphOrigin::original_root);
    for (const auto& c : candidates_) enqueue(c, SubgraphOrigin::rule3);

    SplitResult result;
    while (!queue_.empty()) {
      Provenance p = std::move(queue_.front());
      queue_.pop_front();
      AmrGraph sub;
      sub.set_root(p.root);
      copy(p.root, /*entry=*/true, sub);
      result.subgraphs.push_back(std::move(sub));
      result.provenance.push_back(std::move(p));
    }
    return result;
  }

 private:
  void enqueue(const std::string& var, SubgraphOrigin origin) {
    if (queued_.insert(var).second) queue_.push_back({var, origin});
  }

  bool is_leaf(const std::string& var) const {
    auto it = adj_.find(var);
    return it == adj_.end() || it->second.empty();
  }

  std::size_t args(const std::string& var) const {
    auto it = args_.find(var);
    return it == args_.end() ? 0 : it->second;
  }

  void copy(const std::string& var, bool entry, AmrGraph& sub) {
    const std::string& concept_text = view_.concept_of(var);
    sub.add_node(var, concept_text);
    if (is_leaf(var)) return;

    // Rule 1: stub out big predicates and extract them on their own later.
    if (!entry && !visited_.contains(var) && is_frame_concept(concept_text) &&
        args(var) > config_.sigma) {
      enqueue(var, SubgraphOrigin::rule1);
      return;
    }

    // Rule 2: on revisits keep only names, values and other non-core relations.
    bool revisit = !visited_.insert(var).second;
    for (std::size_t ei : adj_.at(var)) {
      const Edge& e = view_.edges()[ei];
      if (revisit && classify_role(e.role).is_core) continue;
      sub.add_edge(e);
      if (e.targets_node() && !sub.has_node(e.target_var())) {
        copy(e.target_var(), false, sub);
      }
    }
  }

  SplitConfig config_;
  AmrGraph view_;
  std::vector<std::string> candidates_;
  std::unordered_map<std::string, std::vector<std::size_t>> adj_;
  std::unordered_map<std::string, std::size_t> args_;
  std::unordered_set<std::string> visited_;
  std::unordered_set<std::string> queued_;
  std::deque<Provenance> queue_;
};

}  // namespace

SplitResult split(const AmrGraph& graph, const SplitConfig& config) {
  graph.validate();
  return Splitter(graph, config).run();
}

double node_coverage(const AmrGraph& input, const std::vector<AmrGraph>& subgraphs) {
  if (input.node_count() == 0) return 0.0;
  std::size_t covered = 0;
  for (const auto& [var, concept_text] : input.nodes()) {
    for (const auto& s : subgraphs) {
      if (s.has_node(var)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(input.node_count());
}

double node_coverage(const AmrGraph& input, const SplitResult& result) {
  return node_coverage(input, result.subgraphs);
}

}  // namespace amrs3
