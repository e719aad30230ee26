#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "amrs3/corpus.hpp"
#include "amrs3/error.hpp"
#include "../support/fixtures.hpp"

using namespace amrs3;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "amrs3_corpus_tests";
  fs::create_directories(dir);
  return dir / name;
}

ErrorCode code_of(std::string_view text) {
  try {
    parse_corpus(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("two valid lines give two records") {
  auto c = parse_corpus(
      "{\"id\":\"a\",\"sentence\":\"One.\"}\n\n{\"id\":\"b\",\"sentence\":\"Two.\",\"amr\":\"(a / apple)\"}\n");
  REQUIRE(c.records.size() == 2);
  CHECK(c.records[1].amr == "(a / apple)");
  CHECK_FALSE(c.records[0].amr);
  CHECK(c.diagnostics.empty());
}

TEST_CASE("structural problems name the line") {
  try {
    parse_corpus("{\"id\":\"a\",\"sentence\":\"x\"}\n{\"sentence\":\"no id\"}\n");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::format);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(code_of("{not json}") == ErrorCode::format);
  CHECK(code_of("[1,2]") == ErrorCode::format);
  CHECK(code_of("{\"id\":\"a\"}") == ErrorCode::format);
  CHECK(code_of("{\"id\":\"a\",\"sentence\":3}") == ErrorCode::format);
  CHECK(code_of("{\"id\":\"a\",\"sentence\":\"x\"}\n{\"id\":\"a\",\"sentence\":\"y\"}") == ErrorCode::duplicate_id);
}

TEST_CASE("unparseable amr is skipped with a diagnostic, or fatal on request") {
  std::string text = "{\"id\":\"r1\",\"sentence\":\"x\",\"amr\":\"(a / apple\"}\n{\"id\":\"r2\",\"sentence\":\"y\"}\n";
  auto c = parse_corpus(text);
  REQUIRE(c.records.size() == 1);
  CHECK(c.records[0].id == "r2");
  REQUIRE(c.diagnostics.size() == 1);
  CHECK(c.diagnostics[0].line == 1);
  CHECK(c.diagnostics[0].id == "r1");
  CHECK_THROWS_AS(parse_corpus(text, {true}), Error);
}

TEST_CASE("write then read is the identity") {
  CorpusRecord full{"x1", "S \"quoted\" é.", "(a / apple)", "# Steps\n", "done", "oops"};
  CorpusRecord bare{"x2", "", std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  auto path = temp_file("roundtrip.jsonl");
  write_results(path, {full, bare});
  auto c = read_corpus(path);
  REQUIRE(c.records.size() == 2);
  CHECK(c.records[0] == full);
  CHECK(c.records[1] == bare);
  auto first = fx::slurp(path.string());
  write_results(path, c.records);
  CHECK(fx::slurp(path.string()) == first);
}

TEST_CASE("record fields come out in a fixed order") {
  CorpusRecord r{"id1", "s", "(a / apple)", "t", "c", std::nullopt};
  CHECK(format_record(r) ==
        "{\"id\":\"id1\",\"sentence\":\"s\",\"amr\":\"(a / apple)\",\"trace\":\"t\",\"completion\":\"c\"}");
}

TEST_CASE("empty sequence writes an empty file") {
  auto path = temp_file("empty.jsonl");
  write_results(path, {});
  CHECK(fs::file_size(path) == 0);
  CHECK(read_corpus(path).records.empty());
}

TEST_CASE("missing file is an I/O error") {
  try {
    read_corpus(temp_file("does-not-exist.jsonl"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
