#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amrs3/graph.hpp"

namespace amrs3::penman {

enum class TokenKind { open_paren, close_paren, slash, role, symbol, string_literal };

struct Token {
  TokenKind kind;
  std::string_view text;  // slice of the tokenized source
  std::size_t position;   // byte offset
};

enum class Severity { error, warning };

struct Diagnostic {
  std::size_t position = 0;
  std::string message;
  Severity severity = Severity::error;
};

std::string to_string(const Diagnostic& d);

struct TokenStream {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

/// Splits PENMAN text into tokens. Never throws: unterminated strings and stray
/// characters become diagnostics. `#` comments and `~e.N` alignment markers are
/// skipped. Token texts point into `source`, which must outlive the result.
TokenStream tokenize(std::string_view source);

struct ParseResult {
  std::optional<AmrGraph> graph;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return graph.has_value(); }
};

inline constexpr std::size_t max_nesting_depth = 1000;

/// Parses exactly one graph. Any error diagnostic means no graph is returned.
ParseResult parse(std::string_view source);

/// Like parse() but throws Error(ErrorCode::parse) carrying the first error.
AmrGraph parse_or_throw(std::string_view source);

enum class Layout { single_line, indented };

/// Tree-expands the graph from its root in stored edge order. A node that has
/// already been written is emitted as a bare variable afterwards. Throws
/// malformed_graph if some node is unreachable from the root.
std::string serialize(const AmrGraph& graph, Layout layout = Layout::single_line);

/// Serialization with variables renamed z0, z1, ... in visit order and edges
/// sorted by (role, target label, subtree shape). Byte equality of canonical
/// forms is the isomorphism test used throughout the toolkit.
std::string canonical_form(const AmrGraph& graph);

/// One top-level graph inside a multi-graph PENMAN file together with its
/// `# ::key value` metadata (e.g. ::id, ::snt).
struct Document {
  std::map<std::string, std::string> metadata;
  std::string text;
  std::size_t position = 0;
};

/// Splits a file containing any number of graphs. Text outside of any
/// parenthesized group (other than comments) is reported as a diagnostic.
std::vector<Document> split_documents(std::string_view source,
                                      std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace amrs3::penman
