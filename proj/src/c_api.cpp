#include "amrs3/amrs3.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <new>
#include <string>

#include "json.hpp"

#include "amrs3/corpus.hpp"
#include "amrs3/elements.hpp"
#include "amrs3/error.hpp"
#include "amrs3/llm_client.hpp"
#include "amrs3/penman.hpp"
#include "amrs3/prompts.hpp"
#include "amrs3/splitter.hpp"
#include "amrs3/trace.hpp"

struct amrs3_graph {
  amrs3::AmrGraph graph;
};

struct amrs3_split {
  amrs3::SplitResult result;
  std::vector<amrs3_graph> subgraphs;
};

struct amrs3_trace_report {
  amrs3::TraceReport report;
};

struct amrs3_corpus {
  amrs3::Corpus corpus;
  std::vector<std::string> diagnostic_text;
};

struct amrs3_llm {
  explicit amrs3_llm(amrs3::LlmConfig c) : client(std::move(c)) {}
  amrs3::LlmClient client;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string g_last_error;

amrs3_status fail(amrs3_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
amrs3_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const amrs3::Error& e) {
    return fail(static_cast<amrs3_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AMRS3_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AMRS3_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

amrs3::SplitConfig to_config(const amrs3_split_config* c) {
  amrs3::SplitConfig cfg;
  if (c) {
    cfg.sigma = c->sigma;
    cfg.apply_rule3 = c->apply_rule3 != 0;
  }
  return cfg;
}

#define AMRS3_REQUIRE(cond, what) \
  if (!(cond)) return fail(AMRS3_E_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* amrs3_version(void) { return "1.0.0"; }

const char* amrs3_status_name(amrs3_status status) {
  switch (status) {
    case AMRS3_OK: return "ok";
    case AMRS3_E_INVALID_ARGUMENT: return "invalid_argument";
    case AMRS3_E_PARSE: return "parse_error";
    case AMRS3_E_MALFORMED_GRAPH: return "malformed_graph";
    case AMRS3_E_UNKNOWN_VARIABLE: return "unknown_variable";
    case AMRS3_E_MISSING_ARTIFACT: return "missing_artifact";
    case AMRS3_E_IO: return "io_error";
    case AMRS3_E_FORMAT: return "format_error";
    case AMRS3_E_DUPLICATE_ID: return "duplicate_id";
    case AMRS3_E_AUTHENTICATION: return "authentication_error";
    case AMRS3_E_NETWORK: return "network_error";
    case AMRS3_E_HTTP: return "http_error";
    case AMRS3_E_MALFORMED_RESPONSE: return "malformed_response";
    case AMRS3_E_EMPTY_INPUT: return "empty_input";
    case AMRS3_E_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* amrs3_last_error(void) { return g_last_error.c_str(); }

void amrs3_string_free(char* s) { std::free(s); }

// ---- graphs ---------------------------------------------------------------

amrs3_status amrs3_graph_parse(const char* source, size_t length, amrs3_graph** out) {
  AMRS3_REQUIRE(source && out, "source and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto r = amrs3::penman::parse(std::string_view(source, length));
    if (!r.ok()) {
      std::string msg;
      for (const auto& d : r.diagnostics) {
        if (!msg.empty()) msg += '\n';
        msg += amrs3::penman::to_string(d);
      }
      return fail(AMRS3_E_PARSE, msg.empty() ? "parse failed" : msg);
    }
    *out = new amrs3_graph{std::move(*r.graph)};
    return AMRS3_OK;
  });
}

void amrs3_graph_free(amrs3_graph* graph) { delete graph; }

size_t amrs3_graph_node_count(const amrs3_graph* graph) { return graph ? graph->graph.node_count() : 0; }
size_t amrs3_graph_edge_count(const amrs3_graph* graph) { return graph ? graph->graph.edge_count() : 0; }

amrs3_status amrs3_graph_serialize(const amrs3_graph* graph, int indented, char** out) {
  AMRS3_REQUIRE(graph && out, "graph and out must not be NULL");
  return guarded([&] {
    *out = dup(amrs3::penman::serialize(graph->graph, indented ? amrs3::penman::Layout::indented
                                                               : amrs3::penman::Layout::single_line));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_graph_canonical(const amrs3_graph* graph, char** out) {
  AMRS3_REQUIRE(graph && out, "graph and out must not be NULL");
  return guarded([&] {
    *out = dup(amrs3::penman::canonical_form(graph->graph));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_penman_documents(const char* source, size_t length, char** out_json) {
  AMRS3_REQUIRE(source && out_json, "source and out_json must not be NULL");
  return guarded([&] {
    std::vector<amrs3::penman::Diagnostic> diags;
    auto docs = amrs3::penman::split_documents(std::string_view(source, length), &diags);
    if (!diags.empty()) {
      std::string msg;
      for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + amrs3::penman::to_string(d);
      return fail(AMRS3_E_PARSE, msg);
    }
    json arr = json::array();
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& d = docs[i];
      auto id = d.metadata.find("id");
      auto snt = d.metadata.find("snt");
      arr.push_back({{"id", id != d.metadata.end() && !id->second.empty() ? id->second : "g" + std::to_string(i + 1)},
                     {"sentence", snt != d.metadata.end() ? snt->second : ""},
                     {"amr", d.text},
                     {"position", d.position}});
    }
    *out_json = dup(dump(arr));
    return AMRS3_OK;
  });
}

// ---- splitting ------------------------------------------------------------

amrs3_split_config amrs3_split_config_default(void) {
  amrs3::SplitConfig d;
  return amrs3_split_config{d.sigma, d.apply_rule3 ? 1 : 0};
}

amrs3_status amrs3_split_graph(const amrs3_graph* graph, const amrs3_split_config* config, amrs3_split** out) {
  AMRS3_REQUIRE(graph && out, "graph and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<amrs3_split>();
    s->result = amrs3::split(graph->graph, to_config(config));
    for (const auto& g : s->result.subgraphs) s->subgraphs.push_back(amrs3_graph{g});
    *out = s.release();
    return AMRS3_OK;
  });
}

void amrs3_split_free(amrs3_split* split) { delete split; }

size_t amrs3_split_count(const amrs3_split* split) { return split ? split->subgraphs.size() : 0; }

amrs3_status amrs3_split_subgraph(const amrs3_split* split, size_t index, const amrs3_graph** out) {
  AMRS3_REQUIRE(split && out, "split and out must not be NULL");
  AMRS3_REQUIRE(index < split->subgraphs.size(), "subgraph index out of range");
  *out = &split->subgraphs[index];
  return AMRS3_OK;
}

amrs3_status amrs3_split_provenance(const amrs3_split* split, size_t index, const char** root_variable,
                                    amrs3_origin* origin) {
  AMRS3_REQUIRE(split, "split must not be NULL");
  AMRS3_REQUIRE(index < split->result.provenance.size(), "subgraph index out of range");
  const auto& p = split->result.provenance[index];
  if (root_variable) *root_variable = p.root.c_str();
  if (origin) *origin = static_cast<amrs3_origin>(p.origin);
  return AMRS3_OK;
}

const char* amrs3_origin_name(amrs3_origin origin) {
  switch (origin) {
    case AMRS3_ORIGIN_ORIGINAL_ROOT: return "original-root";
    case AMRS3_ORIGIN_RULE1: return "rule1";
    case AMRS3_ORIGIN_RULE3: return "rule3";
  }
  return "unknown";
}

amrs3_status amrs3_split_coverage(const amrs3_graph* input, const amrs3_split* split, double* out) {
  AMRS3_REQUIRE(input && split && out, "arguments must not be NULL");
  return guarded([&] {
    *out = amrs3::node_coverage(input->graph, split->result);
    return AMRS3_OK;
  });
}

// ---- elements -------------------------------------------------------------

amrs3_status amrs3_predicates_json(const amrs3_graph* graph, char** out_json) {
  AMRS3_REQUIRE(graph && out_json, "graph and out_json must not be NULL");
  return guarded([&] {
    *out_json = dup(dump(json(amrs3::extract_predicates(graph->graph))));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_entities_json(const amrs3_graph* graph, char** out_json) {
  AMRS3_REQUIRE(graph && out_json, "graph and out_json must not be NULL");
  return guarded([&] {
    *out_json = dup(dump(json(amrs3::extract_entities(graph->graph))));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_anonymize(const amrs3_graph* graph, amrs3_graph** out_graph, char** out_map_json) {
  AMRS3_REQUIRE(graph && out_graph && out_map_json, "arguments must not be NULL");
  *out_graph = nullptr;
  return guarded([&] {
    auto a = amrs3::anonymize(graph->graph);
    json map = json::array();
    for (const auto& p : a.map.entries) {
      map.push_back({{"placeholder", p.token}, {"original", p.original}, {"category", p.category}});
    }
    std::string text = dump(map);
    auto g = std::make_unique<amrs3_graph>(amrs3_graph{std::move(a.graph)});
    *out_map_json = dup(text);
    *out_graph = g.release();
    return AMRS3_OK;
  });
}

amrs3_status amrs3_deanonymize(const char* text, const char* map_json, char** out) {
  AMRS3_REQUIRE(text && map_json && out, "arguments must not be NULL");
  return guarded([&] {
    json j = json::parse(map_json, nullptr, false);
    if (j.is_discarded() || !j.is_array()) return fail(AMRS3_E_FORMAT, "map must be a JSON array");
    amrs3::AnonymizationMap map;
    for (const auto& e : j) {
      if (!e.is_object() || !e.contains("placeholder") || !e.contains("original") ||
          !e["placeholder"].is_string() || !e["original"].is_string()) {
        return fail(AMRS3_E_FORMAT, "map entries need string 'placeholder' and 'original'");
      }
      map.entries.push_back({e["placeholder"].get<std::string>(), e["original"].get<std::string>(),
                             e.value("category", std::string())});
    }
    *out = dup(amrs3::deanonymize(text, map));
    return AMRS3_OK;
  });
}

// ---- prompts --------------------------------------------------------------

amrs3_status amrs3_strategy_from_name(const char* name, amrs3_strategy* out) {
  AMRS3_REQUIRE(name && out, "name and out must not be NULL");
  return guarded([&] {
    *out = static_cast<amrs3_strategy>(amrs3::strategy_from_string(name));
    return AMRS3_OK;
  });
}

const char* amrs3_strategy_name(amrs3_strategy strategy) {
  switch (strategy) {
    case AMRS3_STRATEGY_VANILLA: return "vanilla";
    case AMRS3_STRATEGY_DIRECT_AMR: return "direct-amr";
    case AMRS3_STRATEGY_SUBGRAPHS: return "subgraphs";
    case AMRS3_STRATEGY_PREDICATES: return "predicates";
    case AMRS3_STRATEGY_ENTITIES: return "entities";
    case AMRS3_STRATEGY_AMRCOC: return "amrcoc";
  }
  return "unknown";
}

amrs3_status amrs3_prompt_build(amrs3_strategy strategy, const char* sentence, const amrs3_graph* graph,
                                const amrs3_split_config* config, char** out_json) {
  AMRS3_REQUIRE(sentence && out_json, "sentence and out_json must not be NULL");
  AMRS3_REQUIRE(strategy >= AMRS3_STRATEGY_VANILLA && strategy <= AMRS3_STRATEGY_AMRCOC, "unknown strategy");
  return guarded([&] {
    auto s = static_cast<amrs3::Strategy>(strategy);
    amrs3::PromptArtifacts artifacts;
    std::optional<amrs3::SplitResult> split;
    std::optional<amrs3::ElementList> elements;
    if (graph) {
      artifacts.graph = &graph->graph;
      if (s == amrs3::Strategy::subgraphs) {
        split = amrs3::split(graph->graph, to_config(config));
        artifacts.split = &*split;
      }
      if (s == amrs3::Strategy::predicates || s == amrs3::Strategy::entities) {
        elements = amrs3::extract_elements(graph->graph);
        artifacts.elements = &*elements;
      }
    }
    *out_json = dup(amrs3::to_json(amrs3::build_prompt(s, sentence, artifacts)));
    return AMRS3_OK;
  });
}

// ---- traces ---------------------------------------------------------------

amrs3_status amrs3_trace_evaluate(const char* transcript, size_t length, const amrs3_graph* input,
                                  const amrs3_split_config* config, amrs3_trace_report** out) {
  AMRS3_REQUIRE(transcript && input && out, "arguments must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto trace = amrs3::parse_trace(std::string_view(transcript, length));
    *out = new amrs3_trace_report{amrs3::evaluate_trace(trace, input->graph, to_config(config))};
    return AMRS3_OK;
  });
}

void amrs3_trace_report_free(amrs3_trace_report* report) { delete report; }

static amrs3_trace_metrics to_c(const amrs3::TraceMetrics& m) {
  return {m.following_algorithm, m.grammatical_amr, m.node_edge_existence, m.node_coverage,
          m.matching_algorithm_output};
}

amrs3_status amrs3_trace_report_metrics(const amrs3_trace_report* report, amrs3_trace_metrics* out) {
  AMRS3_REQUIRE(report && out, "report and out must not be NULL");
  *out = to_c(report->report.metrics());
  return AMRS3_OK;
}

amrs3_status amrs3_trace_report_json(const amrs3_trace_report* report, char** out_json) {
  AMRS3_REQUIRE(report && out_json, "report and out_json must not be NULL");
  return guarded([&] {
    const auto& r = report->report;
    json j;
    j["following_algorithm"] = r.following_algorithm;
    j["grammatical_amr"] = r.grammatical_amr;
    j["node_edge_existence"] = r.node_edge_existence;
    j["node_coverage"] = r.node_coverage;
    j["matching_algorithm_output"] = r.matching_algorithm_output;
    j["per_step_diagnostics"] = r.per_step_diagnostics;
    *out_json = dup(dump(j));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_trace_corpus_report(const amrs3_trace_report* const* reports, size_t count,
                                       amrs3_trace_metrics* out) {
  AMRS3_REQUIRE(out && (reports || count == 0), "arguments must not be NULL");
  return guarded([&] {
    std::vector<amrs3::TraceReport> all;
    all.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!reports[i]) return fail(AMRS3_E_INVALID_ARGUMENT, "NULL report in array");
      all.push_back(reports[i]->report);
    }
    *out = to_c(amrs3::corpus_report(all));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_trace_synthesize(const amrs3_split* split, char** out) {
  AMRS3_REQUIRE(split && out, "split and out must not be NULL");
  return guarded([&] {
    *out = dup(amrs3::synthesize_trace(split->result));
    return AMRS3_OK;
  });
}

amrs3_status amrs3_trace_parse_json(const char* transcript, size_t length, char** out_json) {
  AMRS3_REQUIRE(transcript && out_json, "arguments must not be NULL");
  return guarded([&] {
    auto t = amrs3::parse_trace(std::string_view(transcript, length));
    json steps = json::array();
    auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
    for (const auto& s : t.steps) {
      const char* call = s.call == amrs3::StepCall::extract_subgraph ? "extract-subgraph"
                         : s.call == amrs3::StepCall::amr_to_text   ? "amr-to-text"
                                                                     : "other";
      steps.push_back({{"call", call},
                       {"root_argument", opt(s.root_argument)},
                       {"returned_penman", opt(s.returned_penman)},
                       {"returned_text", opt(s.returned_text)}});
    }
    json j;
    j["steps"] = steps;
    j["final_output"] = opt(t.final_output);
    *out_json = dup(dump(j));
    return AMRS3_OK;
  });
}

// ---- corpora --------------------------------------------------------------

static void index_diagnostics(amrs3_corpus& c) {
  c.diagnostic_text.clear();
  for (const auto& d : c.corpus.diagnostics) {
    c.diagnostic_text.push_back("line " + std::to_string(d.line) + ": " + d.id + ": " + d.message);
  }
}

amrs3_status amrs3_corpus_read(const char* path, int fatal_bad_amr, amrs3_corpus** out) {
  AMRS3_REQUIRE(path && out, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<amrs3_corpus>();
    c->corpus = amrs3::read_corpus(path, amrs3::CorpusReadOptions{fatal_bad_amr != 0});
    index_diagnostics(*c);
    *out = c.release();
    return AMRS3_OK;
  });
}

amrs3_corpus* amrs3_corpus_new(void) { return new (std::nothrow) amrs3_corpus(); }

void amrs3_corpus_free(amrs3_corpus* corpus) { delete corpus; }

size_t amrs3_corpus_size(const amrs3_corpus* corpus) { return corpus ? corpus->corpus.records.size() : 0; }

static std::optional<std::string>* optional_field(amrs3::CorpusRecord& r, amrs3_field f) {
  switch (f) {
    case AMRS3_FIELD_AMR: return &r.amr;
    case AMRS3_FIELD_TRACE: return &r.trace;
    case AMRS3_FIELD_COMPLETION: return &r.completion;
    case AMRS3_FIELD_ERROR: return &r.error;
    default: return nullptr;
  }
}

amrs3_status amrs3_corpus_get(const amrs3_corpus* corpus, size_t index, amrs3_field field, const char** out) {
  AMRS3_REQUIRE(corpus && out, "corpus and out must not be NULL");
  AMRS3_REQUIRE(index < corpus->corpus.records.size(), "record index out of range");
  auto& r = const_cast<amrs3::CorpusRecord&>(corpus->corpus.records[index]);
  if (field == AMRS3_FIELD_ID) {
    *out = r.id.c_str();
  } else if (field == AMRS3_FIELD_SENTENCE) {
    *out = r.sentence.c_str();
  } else if (auto* opt = optional_field(r, field)) {
    *out = *opt ? (*opt)->c_str() : nullptr;
  } else {
    return fail(AMRS3_E_INVALID_ARGUMENT, "unknown field");
  }
  return AMRS3_OK;
}

amrs3_status amrs3_corpus_append(amrs3_corpus* corpus, const char* id, const char* sentence, size_t* out_index) {
  AMRS3_REQUIRE(corpus && id && sentence, "corpus, id and sentence must not be NULL");
  AMRS3_REQUIRE(*id != '\0', "id must not be empty");
  return guarded([&] {
    for (const auto& r : corpus->corpus.records) {
      if (r.id == id) return fail(AMRS3_E_DUPLICATE_ID, std::string("duplicate id '") + id + "'");
    }
    amrs3::CorpusRecord r;
    r.id = id;
    r.sentence = sentence;
    corpus->corpus.records.push_back(std::move(r));
    if (out_index) *out_index = corpus->corpus.records.size() - 1;
    return AMRS3_OK;
  });
}

amrs3_status amrs3_corpus_set(amrs3_corpus* corpus, size_t index, amrs3_field field, const char* value) {
  AMRS3_REQUIRE(corpus, "corpus must not be NULL");
  AMRS3_REQUIRE(index < corpus->corpus.records.size(), "record index out of range");
  return guarded([&] {
    auto& r = corpus->corpus.records[index];
    if (field == AMRS3_FIELD_ID || field == AMRS3_FIELD_SENTENCE) {
      if (!value) return fail(AMRS3_E_INVALID_ARGUMENT, "id and sentence cannot be cleared");
      if (field == AMRS3_FIELD_ID) {
        if (*value == '\0') return fail(AMRS3_E_INVALID_ARGUMENT, "id must not be empty");
        for (std::size_t i = 0; i < corpus->corpus.records.size(); ++i) {
          if (i != index && corpus->corpus.records[i].id == value)
            return fail(AMRS3_E_DUPLICATE_ID, std::string("duplicate id '") + value + "'");
        }
        r.id = value;
      } else {
        r.sentence = value;
      }
    } else if (auto* opt = optional_field(r, field)) {
      if (value) *opt = std::string(value);
      else opt->reset();
    } else {
      return fail(AMRS3_E_INVALID_ARGUMENT, "unknown field");
    }
    return AMRS3_OK;
  });
}

size_t amrs3_corpus_diagnostic_count(const amrs3_corpus* corpus) {
  return corpus ? corpus->diagnostic_text.size() : 0;
}

const char* amrs3_corpus_diagnostic(const amrs3_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->diagnostic_text.size()) return nullptr;
  return corpus->diagnostic_text[index].c_str();
}

amrs3_status amrs3_corpus_write(const amrs3_corpus* corpus, const char* path) {
  AMRS3_REQUIRE(corpus && path, "corpus and path must not be NULL");
  return guarded([&] {
    amrs3::write_results(path, corpus->corpus.records);
    return AMRS3_OK;
  });
}

amrs3_status amrs3_corpus_record_json(const amrs3_corpus* corpus, size_t index, char** out_json) {
  AMRS3_REQUIRE(corpus && out_json, "corpus and out_json must not be NULL");
  AMRS3_REQUIRE(index < corpus->corpus.records.size(), "record index out of range");
  return guarded([&] {
    *out_json = dup(amrs3::format_record(corpus->corpus.records[index]));
    return AMRS3_OK;
  });
}

// ---- LLM ------------------------------------------------------------------

amrs3_llm_config amrs3_llm_config_default(void) {
  amrs3::LlmConfig d;
  return amrs3_llm_config{nullptr, nullptr, nullptr, d.timeout_seconds, d.max_concurrent,
                          d.temperature, d.max_attempts, d.retry_base_delay_seconds};
}

amrs3_status amrs3_llm_create(const amrs3_llm_config* config, amrs3_llm** out) {
  AMRS3_REQUIRE(config && out, "config and out must not be NULL");
  AMRS3_REQUIRE(config->endpoint && config->model, "endpoint and model are required");
  *out = nullptr;
  return guarded([&] {
    amrs3::LlmConfig c;
    c.endpoint = config->endpoint;
    c.model = config->model;
    if (config->api_key_env) c.api_key_env = config->api_key_env;
    c.timeout_seconds = config->timeout_seconds;
    c.max_concurrent = config->max_concurrent;
    c.temperature = config->temperature;
    if (config->max_attempts > 0) c.max_attempts = config->max_attempts;
    if (config->retry_base_delay_seconds >= 0) c.retry_base_delay_seconds = config->retry_base_delay_seconds;
    *out = new amrs3_llm(std::move(c));
    return AMRS3_OK;
  });
}

void amrs3_llm_free(amrs3_llm* llm) { delete llm; }

amrs3_status amrs3_llm_complete(const amrs3_llm* llm, const char* payload_json, char** out_text) {
  AMRS3_REQUIRE(llm && payload_json && out_text, "arguments must not be NULL");
  return guarded([&] {
    json j = json::parse(payload_json, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("messages") || !j["messages"].is_array()) {
      return fail(AMRS3_E_FORMAT, "payload must be an object with a \"messages\" array");
    }
    std::vector<amrs3::ChatMessage> messages;
    for (const auto& m : j["messages"]) {
      if (!m.is_object() || !m.contains("role") || !m.contains("content") || !m["role"].is_string() ||
          !m["content"].is_string()) {
        return fail(AMRS3_E_FORMAT, "each message needs string 'role' and 'content'");
      }
      messages.push_back({m["role"].get<std::string>(), m["content"].get<std::string>()});
    }
    *out_text = dup(llm->client.complete(messages));
    return AMRS3_OK;
  });
}

}  // extern "C"
