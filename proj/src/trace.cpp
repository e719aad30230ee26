#include "amrs3/trace.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "amrs3/error.hpp"
#include "amrs3/penman.hpp"

namespace amrs3 {

TraceMetrics TraceReport::metrics() const {
  return {following_algorithm ? 1.0 : 0.0, grammatical_amr, node_edge_existence, node_coverage,
          matching_algorithm_output ? 1.0 : 0.0};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string u(s);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

bool is_header(std::string_view line, std::string_view title) {
  line = trim(line);
  if (!line.starts_with('#')) return false;
  line.remove_prefix(1);
  return upper(trim(line)) == upper(title);
}

// Net parenthesis depth change, ignoring string literals.
int paren_balance(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    }
  }
  return depth;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

// Argument text of NAME(...) starting at `open` (index of '('), honouring nesting.
std::string call_argument(std::string_view line, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < line.size(); ++i) {
    if (line[i] == '(') ++depth;
    else if (line[i] == ')' && --depth == 0) return std::string(trim(line.substr(open + 1, i - open - 1)));
  }
  return std::string(trim(line.substr(open + 1)));
}

}  // namespace

CocTrace parse_trace(std::string_view transcript) {
  CocTrace trace;
  trace.raw = std::string(transcript);
  auto lines = split_lines(transcript);

  std::size_t begin = 0, end = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_header(lines[i], "Steps")) {
      begin = i + 1;
      break;
    }
  }
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (is_header(lines[i], "Output")) {
      end = i;
      std::string out;
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        if (!out.empty() || !trim(lines[j]).empty()) {
          if (!out.empty()) out += '\n';
          out += lines[j];
        }
      }
      trace.final_output = std::string(trim(out));
      break;
    }
  }

  for (std::size_t i = begin; i < end; ++i) {
    std::string_view line = lines[i];
    if (trim(line).empty()) continue;
    std::string up = upper(line);
    TraceStep step;
    step.line = std::string(trim(line));

    if (auto k = up.find("EXTRACT_SUBGRAPH"); k != std::string::npos) {
      step.call = StepCall::extract_subgraph;
      auto open = line.find('(', k);
      if (open != std::string_view::npos) step.root_argument = call_argument(line, open);
      auto arrow = line.find("=>", k);
      if (arrow != std::string_view::npos) {
        std::string payload(trim(line.substr(arrow + 2)));
        int depth = paren_balance(payload);
        // A payload may continue over following lines until it balances.
        while (depth > 0 && i + 1 < end) {
          std::string_view next = lines[i + 1];
          std::string next_up = upper(next);
          if (next_up.find("EXTRACT_SUBGRAPH") != std::string::npos ||
              next_up.find("AMR_TO_TEXT") != std::string::npos || trim(next).starts_with("=>")) {
            break;
          }
          payload += '\n';
          payload += next;
          depth += paren_balance(next);
          ++i;
        }
        step.returned_penman = std::string(trim(payload));
      }
    } else if (auto k2 = up.find("AMR_TO_TEXT"); k2 != std::string::npos) {
      step.call = StepCall::amr_to_text;
      auto arrow = line.find("=>", k2);
      if (arrow != std::string_view::npos) {
        step.returned_text = std::string(trim(line.substr(arrow + 2)));
      } else {
        std::size_t j = i + 1;
        while (j < end && trim(lines[j]).empty()) ++j;
        if (j < end && trim(lines[j]).starts_with("=>")) {
          step.returned_text = std::string(trim(trim(lines[j]).substr(2)));
          i = j;
        }
      }
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> dfs_order(const AmrGraph& g) {
  auto adj = g.adjacency();
  std::unordered_set<std::string> seen;
  std::vector<std::string> order;
  auto walk = [&](auto&& self, const std::string& v) -> void {
    seen.insert(v);
    order.push_back(v);
    if (auto it = adj.find(v); it != adj.end()) {
      for (std::size_t ei : it->second) {
        const Edge& e = g.edges()[ei];
        if (e.targets_node() && !seen.contains(e.target_var())) self(self, e.target_var());
      }
    }
  };
  walk(walk, g.root());
  return order;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TraceReport evaluate_trace(const CocTrace& trace, const AmrGraph& input, const SplitConfig& config) {
  TraceReport report;
  auto& diag = report.per_step_diagnostics;

  // Following algorithm: every EXTRACT_SUBGRAPH is answered by an AMR_TO_TEXT
  // before the next extraction.
  std::size_t extracts = 0;
  bool pending = false, following = true;
  for (const auto& s : trace.steps) {
    if (s.call == StepCall::extract_subgraph) {
      if (pending) following = false;
      pending = true;
      ++extracts;
    } else if (s.call == StepCall::amr_to_text) {
      pending = false;
    }
  }
  if (pending) following = false;
  report.following_algorithm = extracts > 0 && following;
  if (extracts == 0) diag.push_back("no EXTRACT_SUBGRAPH step found");

  Deinverted flipped = deinvert(input);
  const AmrGraph& reference_graph = flipped.graph;

  std::multiset<std::string> input_concepts;
  std::set<std::string> concept_set;
  for (const auto& [var, c] : reference_graph.nodes()) {
    input_concepts.insert(c);
    concept_set.insert(c);
  }
  auto input_triples_vec = normalized_triples(reference_graph);
  std::set<Triple> input_triples(input_triples_vec.begin(), input_triples_vec.end());

  // Root arguments resolve to input nodes by concept, first unmatched in DFS order.
  std::vector<std::string> order = dfs_order(input);
  std::unordered_set<std::string> claimed;

  std::size_t payloads = 0, parsed = 0, items = 0, present = 0;
  std::map<std::string, std::size_t> payload_concepts;
  std::set<std::string> payload_canon;
  std::size_t step_no = 0;
  for (const auto& s : trace.steps) {
    ++step_no;
    if (s.call != StepCall::extract_subgraph) continue;
    std::string where = "step " + std::to_string(step_no) + ": ";

    if (s.root_argument) {
      auto hit = std::find_if(order.begin(), order.end(), [&](const std::string& v) {
        return !claimed.contains(v) && (input.concept_of(v) == *s.root_argument || v == *s.root_argument);
      });
      if (hit == order.end()) {
        diag.push_back(where + "root argument '" + *s.root_argument + "' matches no input node");
      } else {
        claimed.insert(*hit);
      }
    }
    if (!s.returned_penman) {
      diag.push_back(where + "EXTRACT_SUBGRAPH without a returned graph");
      continue;
    }
    ++payloads;
    penman::ParseResult pr = penman::parse(*s.returned_penman);
    if (!pr.ok()) {
      std::string why = pr.diagnostics.empty() ? "parse failed" : pr.diagnostics.front().message;
      diag.push_back(where + "payload is not well-formed PENMAN (" + why + ")");
      continue;
    }
    ++parsed;
    const AmrGraph& g = *pr.graph;
    for (const auto& [var, c] : g.nodes()) {
      ++items;
      if (concept_set.contains(c)) ++present;
      else diag.push_back(where + "concept '" + c + "' does not occur in the input");
      ++payload_concepts[c];
    }
    for (const auto& t : normalized_triples(g)) {
      ++items;
      if (input_triples.contains(t)) ++present;
      else diag.push_back(where + "relation (" + t.source_concept + " " + t.role + " " + t.target + ") does not occur in the input");
    }
    try {
      payload_canon.insert(penman::canonical_form(g));
    } catch (const Error&) {
      diag.push_back(where + "payload graph cannot be canonicalized");
    }
  }

  report.grammatical_amr = ratio(parsed, payloads);
  report.node_edge_existence = ratio(present, items);

  // Coverage: k input nodes sharing a concept need k payload instances.
  std::size_t covered = 0;
  for (auto it = input_concepts.begin(); it != input_concepts.end(); it = input_concepts.upper_bound(*it)) {
    std::size_t need = input_concepts.count(*it);
    auto have = payload_concepts.find(*it);
    covered += std::min(need, have == payload_concepts.end() ? std::size_t{0} : have->second);
  }
  report.node_coverage = ratio(covered, input_concepts.size());

  SplitResult reference = split(input, config);
  std::set<std::string> reference_canon;
  for (const auto& sg : reference.subgraphs) reference_canon.insert(penman::canonical_form(sg));
  report.matching_algorithm_output = parsed > 0 && payload_canon == reference_canon;
  if (!report.matching_algorithm_output && parsed > 0) {
    std::size_t missing = 0;
    for (const auto& c : reference_canon) missing += payload_canon.contains(c) ? 0 : 1;
    diag.push_back(std::to_string(missing) + " of " + std::to_string(reference_canon.size()) +
                   " reference subgraphs not reproduced");
  }
  return report;
}

TraceMetrics corpus_report(const std::vector<TraceReport>& reports) {
  if (reports.empty()) throw Error(ErrorCode::empty_input, "corpus report needs at least one trace report");
  TraceMetrics sum;
  for (const auto& r : reports) {
    TraceMetrics m = r.metrics();
    sum.following_algorithm += m.following_algorithm;
    sum.grammatical_amr += m.grammatical_amr;
    sum.node_edge_existence += m.node_edge_existence;
    sum.node_coverage += m.node_coverage;
    sum.matching_algorithm_output += m.matching_algorithm_output;
  }
  double n = static_cast<double>(reports.size());
  return {sum.following_algorithm / n, sum.grammatical_amr / n, sum.node_edge_existence / n,
          sum.node_coverage / n, sum.matching_algorithm_output / n};
}

std::string synthesize_trace(const SplitResult& result) {
  std::ostringstream out;
  out << "# Steps\n";
  std::vector<std::string> sentences;
  for (const auto& sg : result.subgraphs) {
    std::string sentence;
    for (const auto& [var, c] : sg.nodes()) {
      if (!sentence.empty()) sentence += ' ';
      sentence += frame_lemma(c);
    }
    sentence += '.';
    out << "g = EXTRACT_SUBGRAPH(" << sg.concept_of(sg.root()) << ") => " << penman::serialize(sg)
        << "\nprint(AMR_TO_TEXT(g))\n=> " << sentence << '\n';
    sentences.push_back(std::move(sentence));
  }
  out << "# Output\n";
  for (std::size_t i = 0; i < sentences.size(); ++i) out << (i ? " " : "") << sentences[i];
  out << '\n';
  return out.str();
}

}  // namespace amrs3
