#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrs3/graph.hpp"

namespace amrs3 {

struct ElementList {
  std::vector<std::string> predicates;
  std::vector<std::string> entities;
};

/// Lemmas of frame nodes in depth-first order from the root, one per node.
std::vector<std::string> extract_predicates(const AmrGraph& graph);

/// One description per non-frame node in depth-first order. `name` nodes are
/// folded into their owner: `city (Chaldon)`; year-only dates render as
/// `date (1935)` and fuller dates as `date (1935-06-04)`.
std::vector<std::string> extract_entities(const AmrGraph& graph);

ElementList extract_elements(const AmrGraph& graph);

struct Placeholder {
  std::string token;     // e.g. PERSON_0
  std::string original;  // e.g. Jeremy Thorpe
  std::string category;  // e.g. PERSON
};

struct AnonymizationMap {
  std::vector<Placeholder> entries;
  bool empty() const { return entries.empty(); }
};

struct Anonymized {
  AmrGraph graph;
  AnonymizationMap map;
};

/// Replaces the :opN strings under every :name with one CATEGORY_i placeholder
/// (numbered per category in depth-first order) and drops :wiki on the named
/// node. Numbers, dates and quantities are untouched.
Anonymized anonymize(const AmrGraph& graph);

/// Substitutes placeholders back. A placeholder only matches as a whole token,
/// so PERSON_1 never eats the prefix of PERSON_10.
std::string deanonymize(std::string_view text, const AnonymizationMap& map);

}  // namespace amrs3
