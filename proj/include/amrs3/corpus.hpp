#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace amrs3 {

/// One line of a JSONL corpus.
struct CorpusRecord {
  std::string id;
  std::string sentence;
  std::optional<std::string> amr;
  std::optional<std::string> trace;
  std::optional<std::string> completion;
  /// Set on results whose processing failed (e.g. the endpoint was down).
  std::optional<std::string> error;

  bool operator==(const CorpusRecord&) const = default;
};

struct CorpusDiagnostic {
  std::size_t line = 0;
  std::string id;
  std::string message;
};

struct CorpusReadOptions {
  /// When false, records whose `amr` does not parse are dropped with a
  /// diagnostic; when true the first such record aborts the read.
  bool fatal_bad_amr = false;
};

struct Corpus {
  std::vector<CorpusRecord> records;
  std::vector<CorpusDiagnostic> diagnostics;
};

/// Throws io, format (bad JSON or missing fields, naming the line),
/// duplicate_id, or parse (bad amr in fatal mode).
Corpus read_corpus(const std::filesystem::path& path, const CorpusReadOptions& options = {});
Corpus parse_corpus(std::string_view text, const CorpusReadOptions& options = {});

/// One JSON object per line, input order, field order id, sentence, amr,
/// trace, completion, error. Absent optional fields are omitted.
std::string format_record(const CorpusRecord& record);
void write_results(const std::filesystem::path& path, const std::vector<CorpusRecord>& records);

}  // namespace amrs3
