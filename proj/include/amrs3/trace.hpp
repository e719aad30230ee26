#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amrs3/graph.hpp"
#include "amrs3/splitter.hpp"

namespace amrs3 {

enum class StepCall { extract_subgraph, amr_to_text, other };

struct TraceStep {
  StepCall call = StepCall::other;
  std::optional<std::string> root_argument;
  std::optional<std::string> returned_penman;
  std::optional<std::string> returned_text;
  std::string line;  // first source line of the step
};

/// An LLM transcript emulating the EXTRACT_SUBGRAPH / AMR_TO_TEXT program.
struct CocTrace {
  std::vector<TraceStep> steps;
  std::optional<std::string> final_output;
  std::string raw;
};

/// Never fails. Function names match case-insensitively; a PENMAN payload after
/// `=>` may continue over following lines until its parentheses balance; an
/// AMR_TO_TEXT call may carry its `=>` result on the next line.
CocTrace parse_trace(std::string_view transcript);

struct TraceMetrics {
  double following_algorithm = 0.0;
  double grammatical_amr = 0.0;
  double node_edge_existence = 0.0;
  double node_coverage = 0.0;
  double matching_algorithm_output = 0.0;
};

struct TraceReport {
  bool following_algorithm = false;
  double grammatical_amr = 0.0;
  double node_edge_existence = 0.0;
  double node_coverage = 0.0;
  bool matching_algorithm_output = false;
  std::vector<std::string> per_step_diagnostics;

  TraceMetrics metrics() const;
};

/// Scores a transcript against the reference split of `input`. Payload nodes
/// are matched by concept text, never by variable, so renamed variables do not
/// count against the model.
TraceReport evaluate_trace(const CocTrace& trace, const AmrGraph& input, const SplitConfig& config);

/// Macro average over sentences; boolean metrics count as 0/1.
/// Throws empty_input for an empty sequence.
TraceMetrics corpus_report(const std::vector<TraceReport>& reports);

/// The transcript a perfect emulator would write for `result`: one
/// EXTRACT_SUBGRAPH step per subgraph, each followed by AMR_TO_TEXT.
std::string synthesize_trace(const SplitResult& result);

}  // namespace amrs3
