// amrs3 command-line driver. Talks to the library only through amrs3.h.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "amrs3/amrs3.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Failure {
  std::string message;
};

struct CString {
  char* p = nullptr;
  ~CString() { amrs3_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

void check(amrs3_status s, const std::string& context) {
  if (s != AMRS3_OK) {
    std::string msg = context.empty() ? "" : context + ": ";
    throw Failure{msg + amrs3_status_name(s) + ": " + amrs3_last_error()};
  }
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

struct GraphDeleter {
  void operator()(amrs3_graph* g) const { amrs3_graph_free(g); }
};
struct SplitDeleter {
  void operator()(amrs3_split* s) const { amrs3_split_free(s); }
};
struct CorpusDeleter {
  void operator()(amrs3_corpus* c) const { amrs3_corpus_free(c); }
};
struct ReportDeleter {
  void operator()(amrs3_trace_report* r) const { amrs3_trace_report_free(r); }
};
struct LlmDeleter {
  void operator()(amrs3_llm* l) const { amrs3_llm_free(l); }
};
using GraphPtr = std::unique_ptr<amrs3_graph, GraphDeleter>;
using SplitPtr = std::unique_ptr<amrs3_split, SplitDeleter>;
using CorpusPtr = std::unique_ptr<amrs3_corpus, CorpusDeleter>;
using ReportPtr = std::unique_ptr<amrs3_trace_report, ReportDeleter>;
using LlmPtr = std::unique_ptr<amrs3_llm, LlmDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_jsonl(const std::string& path, const std::string& text) {
  auto ends_with = [&](const char* ext) {
    std::string e(ext);
    return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends_with(".jsonl") || ends_with(".ndjson")) return true;
  if (ends_with(".amr") || ends_with(".penman") || ends_with(".txt")) return false;
  auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

// Loads either input format into a corpus handle. Corpus-level diagnostics go
// to stderr; a bad amr in a PENMAN file is fatal.
CorpusPtr load_input(const std::string& path) {
  std::string text = read_file(path);
  if (looks_like_jsonl(path, text)) {
    amrs3_corpus* raw = nullptr;
    check(amrs3_corpus_read(path.c_str(), 0, &raw), path);
    CorpusPtr corpus(raw);
    for (size_t i = 0; i < amrs3_corpus_diagnostic_count(corpus.get()); ++i) {
      std::cerr << "warning: " << path << ": " << amrs3_corpus_diagnostic(corpus.get(), i) << "\n";
    }
    return corpus;
  }
  CString docs;
  check(amrs3_penman_documents(text.data(), text.size(), &docs.p), path);
  CorpusPtr corpus(amrs3_corpus_new());
  if (!corpus) throw Failure{"out of memory"};
  for (const auto& d : json::parse(docs.str())) {
    std::string id = d["id"].get<std::string>();
    std::string amr = d["amr"].get<std::string>();
    amrs3_graph* g = nullptr;
    if (amrs3_graph_parse(amr.data(), amr.size(), &g) != AMRS3_OK) {
      throw Failure{path + ": graph '" + id + "' (starting at byte " + std::to_string(d["position"].get<size_t>()) +
                    "): " + amrs3_last_error()};
    }
    amrs3_graph_free(g);
    size_t index = 0;
    check(amrs3_corpus_append(corpus.get(), id.c_str(), d["sentence"].get<std::string>().c_str(), &index), path);
    check(amrs3_corpus_set(corpus.get(), index, AMRS3_FIELD_AMR, amr.c_str()), path);
  }
  return corpus;
}

std::optional<std::string> field(const amrs3_corpus* c, size_t i, amrs3_field f) {
  const char* v = nullptr;
  check(amrs3_corpus_get(c, i, f, &v), "");
  return v ? std::optional<std::string>(v) : std::nullopt;
}

std::string record_id(const amrs3_corpus* c, size_t i) { return *field(c, i, AMRS3_FIELD_ID); }

GraphPtr record_graph(const amrs3_corpus* c, size_t i) {
  auto amr = field(c, i, AMRS3_FIELD_AMR);
  if (!amr) return nullptr;
  amrs3_graph* g = nullptr;
  check(amrs3_graph_parse(amr->data(), amr->size(), &g), "record '" + record_id(c, i) + "'");
  return GraphPtr(g);
}

GraphPtr require_graph(const amrs3_corpus* c, size_t i) {
  auto g = record_graph(c, i);
  if (!g) throw Failure{"record '" + record_id(c, i) + "' has no amr"};
  return g;
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{"cannot open '" + out_path + "' for writing"};
  out << payload;
  if (!out.flush()) throw Failure{"failed writing '" + out_path + "'"};
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(size_t n, size_t workers, Fn fn) {
  workers = std::max<size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---- commands -------------------------------------------------------------

struct Common {
  std::string input;
};

int cmd_parse(const Common& c) {
  std::string text = read_file(c.input);
  json records = json::array();
  bool failed = false;
  if (looks_like_jsonl(c.input, text)) {
    amrs3_corpus* raw = nullptr;
    check(amrs3_corpus_read(c.input.c_str(), 0, &raw), c.input);
    CorpusPtr corpus(raw);
    for (size_t i = 0; i < amrs3_corpus_diagnostic_count(corpus.get()); ++i) {
      std::cerr << "error: " << c.input << ": " << amrs3_corpus_diagnostic(corpus.get(), i) << "\n";
      failed = true;
    }
    for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
      auto g = record_graph(corpus.get(), i);
      json r{{"id", record_id(corpus.get(), i)}, {"ok", true}};
      if (g) {
        r["nodes"] = amrs3_graph_node_count(g.get());
        r["edges"] = amrs3_graph_edge_count(g.get());
      }
      records.push_back(r);
    }
  } else {
    CString docs;
    check(amrs3_penman_documents(text.data(), text.size(), &docs.p), c.input);
    for (const auto& d : json::parse(docs.str())) {
      std::string amr = d["amr"].get<std::string>();
      size_t base = d["position"].get<size_t>();
      amrs3_graph* g = nullptr;
      json r{{"id", d["id"]}};
      if (amrs3_graph_parse(amr.data(), amr.size(), &g) == AMRS3_OK) {
        r["ok"] = true;
        r["nodes"] = amrs3_graph_node_count(g);
        r["edges"] = amrs3_graph_edge_count(g);
        amrs3_graph_free(g);
      } else {
        failed = true;
        r["ok"] = false;
        r["error"] = amrs3_last_error();
        std::cerr << "error: " << c.input << ": graph '" << d["id"].get<std::string>() << "' (starting at byte " << base
                  << "): " << amrs3_last_error() << "\n";
      }
      records.push_back(r);
    }
  }
  emit("", dump(json{{"schema_version", "1"}, {"records", records}}) + "\n");
  return failed ? kDomainError : kOk;
}

int cmd_canon(const Common& c) {
  CorpusPtr corpus = load_input(c.input);
  std::string out;
  for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
    auto g = require_graph(corpus.get(), i);
    CString canon;
    check(amrs3_graph_canonical(g.get(), &canon.p), record_id(corpus.get(), i));
    out += "# ::id " + record_id(corpus.get(), i) + "\n" + canon.str() + "\n\n";
  }
  emit("", out);
  return kOk;
}

struct SplitFlags {
  size_t sigma = 2;
  bool no_rule3 = false;
  std::string format = "json";
};

amrs3_split_config make_config(size_t sigma, bool no_rule3) {
  amrs3_split_config cfg = amrs3_split_config_default();
  cfg.sigma = sigma;
  cfg.apply_rule3 = no_rule3 ? 0 : 1;
  return cfg;
}

int cmd_split(const Common& c, const SplitFlags& f) {
  CorpusPtr corpus = load_input(c.input);
  amrs3_split_config cfg = make_config(f.sigma, f.no_rule3);
  json records = json::array();
  std::string penman;
  for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
    std::string id = record_id(corpus.get(), i);
    auto g = require_graph(corpus.get(), i);
    amrs3_split* raw = nullptr;
    check(amrs3_split_graph(g.get(), &cfg, &raw), id);
    SplitPtr split(raw);
    json subgraphs = json::array();
    for (size_t k = 0; k < amrs3_split_count(split.get()); ++k) {
      const amrs3_graph* sub = nullptr;
      const char* root = nullptr;
      amrs3_origin origin{};
      check(amrs3_split_subgraph(split.get(), k, &sub), id);
      check(amrs3_split_provenance(split.get(), k, &root, &origin), id);
      CString text;
      check(amrs3_graph_serialize(sub, f.format == "penman" ? 1 : 0, &text.p), id);
      if (f.format == "penman") {
        penman += "# ::id " + id + "." + std::to_string(k + 1) + "\n# ::root " + root + "\n# ::origin " +
                  amrs3_origin_name(origin) + "\n" + text.str() + "\n\n";
      } else {
        subgraphs.push_back({{"root", root}, {"origin", amrs3_origin_name(origin)}, {"amr", text.str()}});
      }
    }
    records.push_back({{"id", id}, {"subgraphs", subgraphs}});
  }
  if (f.format == "penman") {
    emit("", penman);
  } else {
    json out{{"schema_version", "1"}, {"sigma", f.sigma}, {"rule3", !f.no_rule3}, {"records", records}};
    emit("", dump(out) + "\n");
  }
  return kOk;
}

int cmd_elements(const Common& c, bool predicates, bool entities) {
  if (!predicates && !entities) predicates = entities = true;
  CorpusPtr corpus = load_input(c.input);
  json records = json::array();
  for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
    std::string id = record_id(corpus.get(), i);
    auto g = require_graph(corpus.get(), i);
    json r{{"id", id}};
    if (predicates) {
      CString s;
      check(amrs3_predicates_json(g.get(), &s.p), id);
      r["predicates"] = json::parse(s.str());
    }
    if (entities) {
      CString s;
      check(amrs3_entities_json(g.get(), &s.p), id);
      r["entities"] = json::parse(s.str());
    }
    records.push_back(r);
  }
  emit("", dump(json{{"schema_version", "1"}, {"records", records}}) + "\n");
  return kOk;
}

amrs3_strategy parse_strategy(const std::string& name) {
  amrs3_strategy s{};
  check(amrs3_strategy_from_name(name.c_str(), &s), "");
  return s;
}

std::string build_payload(const amrs3_corpus* corpus, size_t i, amrs3_strategy strategy,
                          const amrs3_split_config& cfg) {
  std::string id = record_id(corpus, i);
  auto g = record_graph(corpus, i);
  std::string sentence = *field(corpus, i, AMRS3_FIELD_SENTENCE);
  CString payload;
  check(amrs3_prompt_build(strategy, sentence.c_str(), g.get(), &cfg, &payload.p), "record '" + id + "'");
  return payload.str();
}

struct PromptFlags {
  std::string strategy;
  std::string out;
  size_t sigma = 2;
  bool no_rule3 = false;
};

int cmd_prompt(const Common& c, const PromptFlags& f) {
  amrs3_strategy strategy = parse_strategy(f.strategy);
  CorpusPtr corpus = load_input(c.input);
  amrs3_split_config cfg = make_config(f.sigma, f.no_rule3);
  std::string out;
  for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
    json payload = json::parse(build_payload(corpus.get(), i, strategy, cfg));
    json line{{"schema_version", "1"}, {"id", record_id(corpus.get(), i)}};
    for (auto& [k, v] : payload.items()) line[k] = v;
    out += dump(line) + "\n";
  }
  emit(f.out, out);
  return kOk;
}

struct RunFlags {
  std::string strategy;
  std::string endpoint;
  std::string model = "gpt-3.5-turbo-0125";
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout = 60.0;
  size_t parallel = 1;
  double temperature = 0.0;
  std::string out;
  size_t sigma = 2;
  bool no_rule3 = false;
};

int cmd_run(const Common& c, const RunFlags& f) {
  amrs3_strategy strategy = parse_strategy(f.strategy);
  CorpusPtr corpus = load_input(c.input);
  amrs3_split_config cfg = make_config(f.sigma, f.no_rule3);

  amrs3_llm_config lc = amrs3_llm_config_default();
  lc.endpoint = f.endpoint.c_str();
  lc.model = f.model.c_str();
  lc.api_key_env = f.api_key_env.c_str();
  lc.timeout_seconds = f.timeout;
  lc.max_concurrent = f.parallel;
  lc.temperature = f.temperature;
  amrs3_llm* raw = nullptr;
  check(amrs3_llm_create(&lc, &raw), "llm");
  LlmPtr llm(raw);

  const size_t n = amrs3_corpus_size(corpus.get());
  std::vector<std::optional<std::string>> completions(n), errors(n);
  std::atomic<bool> auth_failed{false};
  parallel_for(n, f.parallel, [&](size_t i) {
    if (auth_failed) {
      errors[i] = "skipped after authentication failure";
      return;
    }
    try {
      std::string payload = build_payload(corpus.get(), i, strategy, cfg);
      CString text;
      amrs3_status s = amrs3_llm_complete(llm.get(), payload.c_str(), &text.p);
      if (s == AMRS3_E_AUTHENTICATION) auth_failed = true;
      check(s, "");
      completions[i] = text.str();
    } catch (const Failure& e) {
      errors[i] = e.message;
    }
  });

  size_t failed = 0;
  for (size_t i = 0; i < n; ++i) {
    check(amrs3_corpus_set(corpus.get(), i, AMRS3_FIELD_COMPLETION, completions[i] ? completions[i]->c_str() : nullptr),
          "");
    check(amrs3_corpus_set(corpus.get(), i, AMRS3_FIELD_ERROR, errors[i] ? errors[i]->c_str() : nullptr), "");
    if (errors[i]) {
      ++failed;
      std::cerr << "error: record '" << record_id(corpus.get(), i) << "': " << *errors[i] << "\n";
    }
  }
  if (f.out.empty() || f.out == "-") {
    std::string out;
    for (size_t i = 0; i < n; ++i) {
      CString line;
      check(amrs3_corpus_record_json(corpus.get(), i, &line.p), "");
      out += line.str() + "\n";
    }
    emit("", out);
  } else {
    check(amrs3_corpus_write(corpus.get(), f.out.c_str()), f.out);
  }
  if (failed) {
    std::cerr << failed << " of " << n << " records failed; results are partial\n";
    return kDomainError;
  }
  return kOk;
}

struct TraceFlags {
  size_t sigma = 2;
  bool no_rule3 = false;
};

json metrics_json(const amrs3_trace_metrics& m) {
  return {{"following_algorithm", m.following_algorithm},
          {"grammatical_amr", m.grammatical_amr},
          {"node_edge_existence", m.node_edge_existence},
          {"node_coverage", m.node_coverage},
          {"matching_algorithm_output", m.matching_algorithm_output}};
}

int cmd_validate_trace(const Common& c, const TraceFlags& f) {
  CorpusPtr corpus = load_input(c.input);
  amrs3_split_config cfg = make_config(f.sigma, f.no_rule3);
  std::vector<ReportPtr> reports;
  json records = json::array();
  json skipped = json::array();
  for (size_t i = 0; i < amrs3_corpus_size(corpus.get()); ++i) {
    std::string id = record_id(corpus.get(), i);
    auto trace = field(corpus.get(), i, AMRS3_FIELD_TRACE);
    auto g = record_graph(corpus.get(), i);
    if (!trace || !g) {
      std::string reason = !g ? "no amr" : "no trace";
      std::cerr << "warning: record '" << id << "' skipped: " << reason << "\n";
      skipped.push_back({{"id", id}, {"reason", reason}});
      continue;
    }
    amrs3_trace_report* raw = nullptr;
    check(amrs3_trace_evaluate(trace->data(), trace->size(), g.get(), &cfg, &raw), id);
    reports.emplace_back(raw);
    CString rj;
    check(amrs3_trace_report_json(raw, &rj.p), id);
    json r{{"id", id}};
    json parsed = json::parse(rj.str());
    for (auto& [k, v] : parsed.items()) r[k] = v;
    records.push_back(r);
  }
  std::vector<const amrs3_trace_report*> ptrs;
  for (const auto& r : reports) ptrs.push_back(r.get());
  amrs3_trace_metrics agg{};
  check(amrs3_trace_corpus_report(ptrs.data(), ptrs.size(), &agg), "aggregate");
  json out{{"schema_version", "1"},
           {"evaluated", reports.size()},
           {"aggregate", metrics_json(agg)},
           {"records", records},
           {"skipped", skipped}};
  emit("", dump(out) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMR-guided syntactic simplification toolkit"};
  app.set_version_flag("--version", std::string(amrs3_version()));
  app.require_subcommand(1);

  Common common;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", common.input, "PENMAN file or JSONL corpus")->required();
  };

  auto* parse = app.add_subcommand("parse", "Check that every graph parses");
  add_input(parse);

  auto* canon = app.add_subcommand("canon", "Print canonical forms");
  add_input(canon);

  SplitFlags split_flags;
  auto* split = app.add_subcommand("split", "Split graphs into predicate-rooted subgraphs");
  add_input(split);
  split->add_option("--sigma", split_flags.sigma, "Argument threshold for Rule 1")->capture_default_str();
  split->add_flag("--no-rule3", split_flags.no_rule3, "Do not promote inverse-role targets to roots");
  split->add_option("--format", split_flags.format, "Output format")
      ->check(CLI::IsMember({"penman", "json"}))
      ->capture_default_str();

  bool want_predicates = false, want_entities = false;
  auto* elements = app.add_subcommand("elements", "List predicates and entities");
  add_input(elements);
  auto* pred_flag = elements->add_flag("--predicates", want_predicates, "Predicates only");
  auto* ent_flag = elements->add_flag("--entities", want_entities, "Entities only");
  pred_flag->excludes(ent_flag);

  const std::vector<std::string> strategies{"vanilla", "direct-amr", "subgraphs", "predicates", "entities", "amrcoc"};

  PromptFlags prompt_flags;
  auto* prompt = app.add_subcommand("prompt", "Build chat payloads");
  add_input(prompt);
  prompt->add_option("--strategy", prompt_flags.strategy)->required()->check(CLI::IsMember(strategies));
  prompt->add_option("--out", prompt_flags.out, "Output file (default stdout)");
  prompt->add_option("--sigma", prompt_flags.sigma)->capture_default_str();
  prompt->add_flag("--no-rule3", prompt_flags.no_rule3);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Send prompts to a chat-completion endpoint");
  add_input(run);
  run->add_option("--strategy", run_flags.strategy)->required()->check(CLI::IsMember(strategies));
  run->add_option("--endpoint", run_flags.endpoint, "Base URL, e.g. http://localhost:8000/v1")->required();
  run->add_option("--model", run_flags.model)->capture_default_str();
  run->add_option("--api-key-env", run_flags.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  run->add_option("--timeout", run_flags.timeout, "Request timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--parallel", run_flags.parallel, "Records in flight")
      ->check(CLI::Range(size_t{1}, size_t{1024}))
      ->capture_default_str();
  run->add_option("--temperature", run_flags.temperature)->capture_default_str();
  run->add_option("--out", run_flags.out, "Result JSONL (default stdout)");
  run->add_option("--sigma", run_flags.sigma)->capture_default_str();
  run->add_flag("--no-rule3", run_flags.no_rule3);

  TraceFlags trace_flags;
  auto* validate = app.add_subcommand("validate-trace", "Score Chain-of-Code transcripts against the splitter");
  add_input(validate);
  validate->add_option("--sigma", trace_flags.sigma)->capture_default_str();
  validate->add_flag("--no-rule3", trace_flags.no_rule3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*parse) return cmd_parse(common);
    if (*canon) return cmd_canon(common);
    if (*split) return cmd_split(common, split_flags);
    if (*elements) return cmd_elements(common, want_predicates, want_entities);
    if (*prompt) return cmd_prompt(common, prompt_flags);
    if (*run) return cmd_run(common, run_flags);
    if (*validate) return cmd_validate_trace(common, trace_flags);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
