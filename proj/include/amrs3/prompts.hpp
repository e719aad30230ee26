#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amrs3/elements.hpp"
#include "amrs3/graph.hpp"
#include "amrs3/splitter.hpp"

namespace amrs3 {

enum class Strategy { vanilla, direct_amr, subgraphs, predicates, entities, amrcoc };

std::string_view to_string(Strategy s);
/// Accepts the names printed by to_string(). Throws invalid_argument.
Strategy strategy_from_string(std::string_view name);
const std::vector<Strategy>& all_strategies();

struct PromptPayload {
  std::optional<std::string> system;
  std::string user;
  std::optional<std::string> assistant_prefix;
  Strategy strategy = Strategy::vanilla;
};

/// Whatever the chosen strategy needs; unused members may stay empty.
struct PromptArtifacts {
  const AmrGraph* graph = nullptr;
  const SplitResult* split = nullptr;
  const ElementList* elements = nullptr;
};

/// Fills the strategy's template. Throws missing_artifact when the strategy
/// needs something `artifacts` does not carry.
PromptPayload build_prompt(Strategy strategy, std::string_view sentence, const PromptArtifacts& artifacts);

struct ChatMessage {
  std::string role;
  std::string content;
};

/// system?, user, assistant? in that order.
std::vector<ChatMessage> to_messages(const PromptPayload& payload);

/// {"strategy": ..., "messages": [{"role": ..., "content": ...}, ...]}
std::string to_json(const PromptPayload& payload);

namespace templates {

inline constexpr std::string_view system_message =
    "You are a helpful assistant that simplifies syntactic structures.";
inline constexpr std::string_view vanilla_user =
    "Rewrite the following paragraph using simple sentence structures and no clauses or conjunctions: ";
inline constexpr std::string_view given_paragraph_and_amr =
    "You are given a paragraph and its abstract meaning representation (AMR).";
inline constexpr std::string_view subgraph_intro =
    "The AMR is split into subgraphs where each subgraph roots at a predicate.";
inline constexpr std::string_view rewrite_instruction =
    "Rewrite the paragraph using simple sentence structures and no clauses or conjunctions. "
    "You can refer to the provided AMR if it helps you in the rewriting.";
inline constexpr std::string_view rewritten_paragraph = "The rewritten paragraph:";

/// Fixed part of the Chain-of-Code prompt: function signatures and the example
/// program.
extern const std::string_view amrcoc_preamble;
/// A complete worked transcript appended to the Chain-of-Code prompt.
extern const std::string_view amrcoc_example;

}  // namespace templates

}  // namespace amrs3
