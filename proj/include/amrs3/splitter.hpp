#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "amrs3/graph.hpp"

namespace amrs3 {

struct SplitConfig {
  /// A frame node with more than `sigma` arguments becomes its own subgraph.
  std::size_t sigma = 2;
  /// Flip inverse relations and root a subgraph at each predicate endpoint.
  bool apply_rule3 = true;
};

enum class SubgraphOrigin { original_root, rule1, rule3 };

std::string_view to_string(SubgraphOrigin origin);

struct Provenance {
  std::string root;
  SubgraphOrigin origin;
};

struct SplitResult {
  std::vector<AmrGraph> subgraphs;
  std::vector<Provenance> provenance;  // parallel to subgraphs
};

/// Extracts per-predicate subgraphs.
///
/// Roots are processed FIFO, starting with the graph root followed by the
/// flipped-inverse predicates when Rule 3 is on. A depth-first copy runs from
/// each root with one visited set shared by the whole run:
///  - a non-root frame node with more than `sigma` arguments that has not been
///    expanded yet is emitted as a concept-only stub and queued as a new root;
///  - a node that was already expanded keeps only its non-core relations;
///  - everything else is copied with all of its relations.
/// A node reached twice within one subgraph is shared, not copied again.
SplitResult split(const AmrGraph& graph, const SplitConfig& config = {});

/// Fraction of input node variables that occur in at least one subgraph.
double node_coverage(const AmrGraph& input, const std::vector<AmrGraph>& subgraphs);
double node_coverage(const AmrGraph& input, const SplitResult& result);

}  // namespace amrs3
