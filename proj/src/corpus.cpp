#include "amrs3/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "amrs3/error.hpp"
#include "amrs3/penman.hpp"

namespace amrs3 {

namespace {

using json = nlohmann::ordered_json;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::format, at_line(line) + "field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::string_view text, const CorpusReadOptions& options) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::format, at_line(line_no) + "malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw Error(ErrorCode::format, at_line(line_no) + "expected a JSON object");

    CorpusRecord r;
    auto id = optional_string(obj, "id", line_no);
    if (!id || id->empty()) throw Error(ErrorCode::format, at_line(line_no) + "missing \"id\"");
    r.id = std::move(*id);
    auto sentence = optional_string(obj, "sentence", line_no);
    if (!sentence) {
      throw Error(ErrorCode::format, at_line(line_no) + "record '" + r.id + "' is missing \"sentence\"");
    }
    r.sentence = std::move(*sentence);
    r.amr = optional_string(obj, "amr", line_no);
    r.trace = optional_string(obj, "trace", line_no);
    r.completion = optional_string(obj, "completion", line_no);
    r.error = optional_string(obj, "error", line_no);

    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::duplicate_id, at_line(line_no) + "duplicate id '" + r.id + "'");
    }
    if (r.amr) {
      penman::ParseResult pr = penman::parse(*r.amr);
      if (!pr.ok()) {
        std::string why = pr.diagnostics.empty() ? "parse failed" : penman::to_string(pr.diagnostics.front());
        if (options.fatal_bad_amr) {
          throw Error(ErrorCode::parse, at_line(line_no) + "record '" + r.id + "': " + why);
        }
        corpus.diagnostics.push_back({line_no, r.id, "amr does not parse (" + why + "); record skipped"});
        continue;
      }
    }
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path, const CorpusReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "failed reading '" + path.string() + "'");
  return parse_corpus(buf.str(), options);
}

std::string format_record(const CorpusRecord& r) {
  json j;
  j["id"] = r.id;
  j["sentence"] = r.sentence;
  if (r.amr) j["amr"] = *r.amr;
  if (r.trace) j["trace"] = *r.trace;
  if (r.completion) j["completion"] = *r.completion;
  if (r.error) j["error"] = *r.error;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_results(const std::filesystem::path& path, const std::vector<CorpusRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  for (const auto& r : records) out << format_record(r) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path.string() + "'");
}

}  // namespace amrs3
