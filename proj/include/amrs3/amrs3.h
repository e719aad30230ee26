/*
 * amrs3 - AMR-based sentence splitting toolkit, C interface.
 *
 * All objects are opaque handles created and released by the library. Every
 * function that can fail returns an amrs3_status; on failure a thread-local
 * message is available from amrs3_last_error() until the next call on the same
 * thread. Strings returned through `char**` out-parameters are owned by the
 * caller and must be released with amrs3_string_free(). Strings returned as
 * `const char*` are borrowed from the handle that produced them.
 *
 * Handles are immutable after construction except amrs3_corpus and are safe to
 * read from several threads at once. amrs3_llm may be shared between threads.
 */
#ifndef AMRS3_H
#define AMRS3_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(AMRS3_BUILDING_LIBRARY)
#    define AMRS3_API __declspec(dllexport)
#  else
#    define AMRS3_API __declspec(dllimport)
#  endif
#else
#  define AMRS3_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amrs3_status {
  AMRS3_OK = 0,
  AMRS3_E_INVALID_ARGUMENT = 1,
  AMRS3_E_PARSE = 2,
  AMRS3_E_MALFORMED_GRAPH = 3,
  AMRS3_E_UNKNOWN_VARIABLE = 4,
  AMRS3_E_MISSING_ARTIFACT = 5,
  AMRS3_E_IO = 6,
  AMRS3_E_FORMAT = 7,
  AMRS3_E_DUPLICATE_ID = 8,
  AMRS3_E_AUTHENTICATION = 9,
  AMRS3_E_NETWORK = 10,
  AMRS3_E_HTTP = 11,
  AMRS3_E_MALFORMED_RESPONSE = 12,
  AMRS3_E_EMPTY_INPUT = 13,
  AMRS3_E_INTERNAL = 14
} amrs3_status;

typedef struct amrs3_graph amrs3_graph;
typedef struct amrs3_split amrs3_split;
typedef struct amrs3_trace_report amrs3_trace_report;
typedef struct amrs3_corpus amrs3_corpus;
typedef struct amrs3_llm amrs3_llm;

AMRS3_API const char* amrs3_version(void);
AMRS3_API const char* amrs3_status_name(amrs3_status status);
AMRS3_API const char* amrs3_last_error(void);
AMRS3_API void amrs3_string_free(char* s);

/* ---- PENMAN graphs ------------------------------------------------------ */

/* Parses one graph. On AMRS3_E_PARSE, amrs3_last_error() holds the positioned
 * diagnostics, one per line. */
AMRS3_API amrs3_status amrs3_graph_parse(const char* source, size_t length, amrs3_graph** out);
AMRS3_API void amrs3_graph_free(amrs3_graph* graph);
AMRS3_API size_t amrs3_graph_node_count(const amrs3_graph* graph);
AMRS3_API size_t amrs3_graph_edge_count(const amrs3_graph* graph);
/* indented != 0 writes one relation per line. */
AMRS3_API amrs3_status amrs3_graph_serialize(const amrs3_graph* graph, int indented, char** out);
AMRS3_API amrs3_status amrs3_graph_canonical(const amrs3_graph* graph, char** out);

/* Splits a multi-graph PENMAN file into documents. Writes a JSON array of
 * {"id", "sentence", "amr", "position"} objects; "id" and "sentence" come from
 * `# ::id` / `# ::snt` metadata when present. */
AMRS3_API amrs3_status amrs3_penman_documents(const char* source, size_t length, char** out_json);

/* ---- Splitting ---------------------------------------------------------- */

typedef struct amrs3_split_config {
  size_t sigma;      /* default 2 */
  int apply_rule3;   /* default 1 */
} amrs3_split_config;

typedef enum amrs3_origin {
  AMRS3_ORIGIN_ORIGINAL_ROOT = 0,
  AMRS3_ORIGIN_RULE1 = 1,
  AMRS3_ORIGIN_RULE3 = 2
} amrs3_origin;

AMRS3_API amrs3_split_config amrs3_split_config_default(void);
AMRS3_API amrs3_status amrs3_split_graph(const amrs3_graph* graph, const amrs3_split_config* config,
                                         amrs3_split** out);
AMRS3_API void amrs3_split_free(amrs3_split* split);
AMRS3_API size_t amrs3_split_count(const amrs3_split* split);
/* Borrowed; valid while `split` lives. */
AMRS3_API amrs3_status amrs3_split_subgraph(const amrs3_split* split, size_t index, const amrs3_graph** out);
AMRS3_API amrs3_status amrs3_split_provenance(const amrs3_split* split, size_t index,
                                              const char** root_variable, amrs3_origin* origin);
AMRS3_API const char* amrs3_origin_name(amrs3_origin origin);
/* Fraction of input nodes present in some subgraph of `split`. */
AMRS3_API amrs3_status amrs3_split_coverage(const amrs3_graph* input, const amrs3_split* split, double* out);

/* ---- Elements and anonymization ----------------------------------------- */

/* JSON array of strings. */
AMRS3_API amrs3_status amrs3_predicates_json(const amrs3_graph* graph, char** out_json);
AMRS3_API amrs3_status amrs3_entities_json(const amrs3_graph* graph, char** out_json);
/* out_map_json: [{"placeholder", "original", "category"}, ...] */
AMRS3_API amrs3_status amrs3_anonymize(const amrs3_graph* graph, amrs3_graph** out_graph, char** out_map_json);
AMRS3_API amrs3_status amrs3_deanonymize(const char* text, const char* map_json, char** out);

/* ---- Prompts ------------------------------------------------------------ */

typedef enum amrs3_strategy {
  AMRS3_STRATEGY_VANILLA = 0,
  AMRS3_STRATEGY_DIRECT_AMR = 1,
  AMRS3_STRATEGY_SUBGRAPHS = 2,
  AMRS3_STRATEGY_PREDICATES = 3,
  AMRS3_STRATEGY_ENTITIES = 4,
  AMRS3_STRATEGY_AMRCOC = 5
} amrs3_strategy;

AMRS3_API amrs3_status amrs3_strategy_from_name(const char* name, amrs3_strategy* out);
AMRS3_API const char* amrs3_strategy_name(amrs3_strategy strategy);

/* Builds the chat payload {"strategy", "messages": [{"role","content"}...]}.
 * `graph` may be NULL only for the vanilla strategy (AMRS3_E_MISSING_ARTIFACT
 * otherwise); split result and element lists are derived from it with
 * `config` (NULL = defaults). */
AMRS3_API amrs3_status amrs3_prompt_build(amrs3_strategy strategy, const char* sentence,
                                          const amrs3_graph* graph, const amrs3_split_config* config,
                                          char** out_json);

/* ---- Chain-of-Code traces ----------------------------------------------- */

typedef struct amrs3_trace_metrics {
  double following_algorithm;
  double grammatical_amr;
  double node_edge_existence;
  double node_coverage;
  double matching_algorithm_output;
} amrs3_trace_metrics;

AMRS3_API amrs3_status amrs3_trace_evaluate(const char* transcript, size_t length, const amrs3_graph* input,
                                            const amrs3_split_config* config, amrs3_trace_report** out);
AMRS3_API void amrs3_trace_report_free(amrs3_trace_report* report);
AMRS3_API amrs3_status amrs3_trace_report_metrics(const amrs3_trace_report* report, amrs3_trace_metrics* out);
/* {"following_algorithm": bool, ..., "per_step_diagnostics": [...]} */
AMRS3_API amrs3_status amrs3_trace_report_json(const amrs3_trace_report* report, char** out_json);
/* Macro average; AMRS3_E_EMPTY_INPUT when count == 0. */
AMRS3_API amrs3_status amrs3_trace_corpus_report(const amrs3_trace_report* const* reports, size_t count,
                                                 amrs3_trace_metrics* out);
/* Transcript a perfect emulator would produce for `split`. */
AMRS3_API amrs3_status amrs3_trace_synthesize(const amrs3_split* split, char** out);
/* Parsed steps as JSON: {"steps": [{"call", "root_argument", "returned_penman",
 * "returned_text"}], "final_output"} */
AMRS3_API amrs3_status amrs3_trace_parse_json(const char* transcript, size_t length, char** out_json);

/* ---- JSONL corpora ------------------------------------------------------ */

typedef enum amrs3_field {
  AMRS3_FIELD_ID = 0,
  AMRS3_FIELD_SENTENCE = 1,
  AMRS3_FIELD_AMR = 2,
  AMRS3_FIELD_TRACE = 3,
  AMRS3_FIELD_COMPLETION = 4,
  AMRS3_FIELD_ERROR = 5
} amrs3_field;

/* fatal_bad_amr != 0 turns an unparseable amr field into an error instead of
 * a skipped record with a diagnostic. */
AMRS3_API amrs3_status amrs3_corpus_read(const char* path, int fatal_bad_amr, amrs3_corpus** out);
AMRS3_API amrs3_corpus* amrs3_corpus_new(void);
AMRS3_API void amrs3_corpus_free(amrs3_corpus* corpus);
AMRS3_API size_t amrs3_corpus_size(const amrs3_corpus* corpus);
/* *out is NULL when an optional field is absent. */
AMRS3_API amrs3_status amrs3_corpus_get(const amrs3_corpus* corpus, size_t index, amrs3_field field,
                                        const char** out);
/* Appends a record with the given id and sentence; returns its index. */
AMRS3_API amrs3_status amrs3_corpus_append(amrs3_corpus* corpus, const char* id, const char* sentence,
                                           size_t* out_index);
/* value == NULL clears an optional field. id and sentence cannot be cleared. */
AMRS3_API amrs3_status amrs3_corpus_set(amrs3_corpus* corpus, size_t index, amrs3_field field,
                                        const char* value);
AMRS3_API size_t amrs3_corpus_diagnostic_count(const amrs3_corpus* corpus);
/* "line N: <id>: message" */
AMRS3_API const char* amrs3_corpus_diagnostic(const amrs3_corpus* corpus, size_t index);
AMRS3_API amrs3_status amrs3_corpus_write(const amrs3_corpus* corpus, const char* path);
/* One record as a JSON line (no trailing newline). */
AMRS3_API amrs3_status amrs3_corpus_record_json(const amrs3_corpus* corpus, size_t index, char** out_json);

/* ---- LLM endpoint ------------------------------------------------------- */

typedef struct amrs3_llm_config {
  const char* endpoint;      /* e.g. "http://localhost:8000/v1" */
  const char* model;
  const char* api_key_env;   /* NULL = "OPENAI_API_KEY" */
  double timeout_seconds;    /* > 0 */
  size_t max_concurrent;     /* >= 1 */
  double temperature;
  int max_attempts;          /* 0 = default (3) */
  double retry_base_delay_seconds; /* < 0 = default (1 s) */
} amrs3_llm_config;

AMRS3_API amrs3_llm_config amrs3_llm_config_default(void);
AMRS3_API amrs3_status amrs3_llm_create(const amrs3_llm_config* config, amrs3_llm** out);
AMRS3_API void amrs3_llm_free(amrs3_llm* llm);
/* payload_json is the output of amrs3_prompt_build (only "messages" is read). */
AMRS3_API amrs3_status amrs3_llm_complete(const amrs3_llm* llm, const char* payload_json, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* AMRS3_H */
