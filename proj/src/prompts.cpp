#include "amrs3/prompts.hpp"

#include <array>

#include "json.hpp"

#include "amrs3/error.hpp"
#include "amrs3/penman.hpp"

namespace amrs3 {

namespace templates {

const std::string_view amrcoc_preamble =
    "You are given a paragraph and its abstract meaning representation (AMR). "
    "AMR captures \"who is doing what to whom\" in a sentence. Begin your steps with # Steps.\n"
    "# Functions to process AMR\n"
    "EXTRACT_SUBGRAPH(root: Node) -> AMR\n"
    "extracts the subgraph rooted at `root`.\n"
    "AMR_TO_TEXT(graph: AMR) -> str\n"
    "converts an AMR graph back to text.\n"
    "# Example program\n"
    "for predicate in amr:\n"
    "    g = EXTRACT_SUBGRAPH(predicate)\n"
    "    print(AMR_TO_TEXT(g))\n";

const std::string_view amrcoc_example =
    "# Example\n"
    "Paragraph: It flows through the town of Yeovil and joins River Parrett.\n"
    "AMR: (z0 / and :op1 (z1 / flow-01 :ARG1 (z2 / it) :path (z3 / town :name (z4 / name :op1 \"Yeovil\"))) "
    ":op2 (z5 / join-01 :ARG1 z2 :ARG2 (z6 / river :name (z7 / name :op1 \"River\" :op2 \"Parrett\"))))\n"
    "# Steps\n"
    "g = EXTRACT_SUBGRAPH(flow-01) => (z1 / flow-01 :ARG1 (z2 / it) :path (z3 / town :name (z4 / name :op1 \"Yeovil\")))\n"
    "print(AMR_TO_TEXT(g))\n"
    "=> It flows through the town of Yeovil.\n"
    "g = EXTRACT_SUBGRAPH(join-01) => (z5 / join-01 :ARG1 (z2 / it) :ARG2 (z6 / river :name (z7 / name :op1 \"River\" :op2 \"Parrett\")))\n"
    "print(AMR_TO_TEXT(g))\n"
    "=> It joins River Parrett.\n"
    "# Output\n"
    "It flows through the town of Yeovil. It joins River Parrett.\n";

}  // namespace templates

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 6> kNames = {{
    {Strategy::vanilla, "vanilla"},
    {Strategy::direct_amr, "direct-amr"},
    {Strategy::subgraphs, "subgraphs"},
    {Strategy::predicates, "predicates"},
    {Strategy::entities, "entities"},
    {Strategy::amrcoc, "amrcoc"},
}};

[[noreturn]] void missing(Strategy s, std::string_view what) {
  throw Error(ErrorCode::missing_artifact,
              "strategy '" + std::string(to_string(s)) + "' needs " + std::string(what));
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) {
    if (!s.empty()) s += ", ";
    s += i;
  }
  return s;
}

// Prompt frame shared by the direct AMR prompt and its controlled variants.
std::string amr_frame(std::string_view intro, std::string_view sentence, std::string_view section) {
  std::string u;
  u += intro;
  u += "\n# Paragraph\n";
  u += sentence;
  u += '\n';
  u += section;
  u += templates::rewrite_instruction;
  u += '\n';
  u += templates::rewritten_paragraph;
  return u;
}

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kNames)
    if (k == s) return name;
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw Error(ErrorCode::invalid_argument, "unknown prompting strategy '" + std::string(name) + "'");
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all = {Strategy::vanilla,    Strategy::direct_amr,
                                            Strategy::subgraphs,  Strategy::predicates,
                                            Strategy::entities,   Strategy::amrcoc};
  return all;
}

PromptPayload build_prompt(Strategy strategy, std::string_view sentence, const PromptArtifacts& a) {
  PromptPayload p;
  p.strategy = strategy;
  switch (strategy) {
    case Strategy::vanilla:
      p.system = std::string(templates::system_message);
      p.user = std::string(templates::vanilla_user) + std::string(sentence);
      break;

    case Strategy::direct_amr: {
      if (!a.graph) missing(strategy, "an AMR graph");
      std::string section = "# AMR\n" + penman::serialize(*a.graph) + "\n";
      p.user = amr_frame(templates::given_paragraph_and_amr, sentence, section);
      break;
    }

    case Strategy::subgraphs: {
      if (!a.split) missing(strategy, "a split result");
      std::string section = "# AMR Subgraphs\n";
      for (std::size_t i = 0; i < a.split->subgraphs.size(); ++i) {
        section += "## Subgraph " + std::to_string(i + 1) + "\n";
        section += penman::serialize(a.split->subgraphs[i], penman::Layout::indented);
        section += '\n';
      }
      std::string intro = std::string(templates::given_paragraph_and_amr) + " " +
                          std::string(templates::subgraph_intro);
      p.user = amr_frame(intro, sentence, section);
      break;
    }

    case Strategy::predicates:
      if (!a.elements) missing(strategy, "an element list");
      p.user = amr_frame(templates::given_paragraph_and_amr, sentence,
                         "# Predicates\n" + join(a.elements->predicates) + "\n");
      break;

    case Strategy::entities:
      if (!a.elements) missing(strategy, "an element list");
      p.user = amr_frame(templates::given_paragraph_and_amr, sentence,
                         "# Entities\n" + join(a.elements->entities) + "\n");
      break;

    case Strategy::amrcoc:
      if (!a.graph) missing(strategy, "an AMR graph");
      p.user = std::string(templates::amrcoc_preamble) + std::string(templates::amrcoc_example) +
               "# Paragraph\n" + std::string(sentence) + "\n# AMR\n" +
               penman::serialize(*a.graph, penman::Layout::indented);
      break;
  }
  return p;
}

std::vector<ChatMessage> to_messages(const PromptPayload& payload) {
  std::vector<ChatMessage> m;
  if (payload.system) m.push_back({"system", *payload.system});
  m.push_back({"user", payload.user});
  if (payload.assistant_prefix) m.push_back({"assistant", *payload.assistant_prefix});
  return m;
}

std::string to_json(const PromptPayload& payload) {
  nlohmann::ordered_json j;
  j["strategy"] = std::string(to_string(payload.strategy));
  j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : to_messages(payload)) {
    j["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

}  // namespace amrs3
