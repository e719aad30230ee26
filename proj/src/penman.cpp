#include "amrs3/penman.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "amrs3/error.hpp"

namespace amrs3::penman {

std::string to_string(const Diagnostic& d) {
  return std::string(d.severity == Severity::error ? "error" : "warning") + " at byte " +
         std::to_string(d.position) + ": " + d.message;
}

bool TokenStream::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_role_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
}

bool is_control(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u < 0x20 && !is_space(c)) || u == 0x7f;
}

bool ends_symbol(char c) {
  return is_space(c) || c == '(' || c == ')' || c == '/' || c == '"' || c == '~' || is_control(c);
}

// Alignment markers look like "~e.12" or "~e.3,4".
std::size_t skip_alignment(std::string_view s, std::size_t i) {
  ++i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == ','))
    ++i;
  return i;
}

}  // namespace

TokenStream tokenize(std::string_view src) {
  TokenStream out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (is_space(c)) {
      ++i;
    } else if (c == '#') {
      while (i < n && src[i] != '\n') ++i;
    } else if (c == '(') {
      out.tokens.push_back({TokenKind::open_paren, src.substr(i, 1), i});
      ++i;
    } else if (c == ')') {
      out.tokens.push_back({TokenKind::close_paren, src.substr(i, 1), i});
      ++i;
    } else if (c == '/') {
      out.tokens.push_back({TokenKind::slash, src.substr(i, 1), i});
      ++i;
    } else if (c == '~') {
      i = skip_alignment(src, i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        if (src[j] == '\\' && j + 1 < n) {
          j += 2;
        } else if (src[j] == '"') {
          closed = true;
          ++j;
          break;
        } else {
          ++j;
        }
      }
      if (!closed) {
        j = n;
        out.diagnostics.push_back({i, "unterminated string literal", Severity::error});
      }
      out.tokens.push_back({TokenKind::string_literal, src.substr(i, j - i), i});
      i = j;
    } else if (c == ':') {
      std::size_t j = i + 1;
      while (j < n && is_role_char(src[j])) ++j;
      if (j == i + 1) {
        out.diagnostics.push_back({i, "role marker ':' without a role name", Severity::error});
        i = j;
      } else {
        out.tokens.push_back({TokenKind::role, src.substr(i, j - i), i});
        i = j;
      }
    } else if (is_control(c)) {
      out.diagnostics.push_back(
          {i, "illegal control character 0x" + std::to_string(static_cast<unsigned char>(c)),
           Severity::error});
      ++i;
    } else {
      std::size_t j = i;
      while (j < n && !ends_symbol(src[j])) ++j;
      out.tokens.push_back({TokenKind::symbol, src.substr(i, j - i), i});
      i = j;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ParseFailure {
  Diagnostic diagnostic;
};

std::string unescape(std::string_view literal) {
  // literal includes the surrounding quotes (the closing one may be missing)
  std::string_view body = literal.substr(1);
  if (!body.empty() && body.back() == '"') body.remove_suffix(1);
  std::string s;
  s.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\' && i + 1 < body.size() && (body[i + 1] == '"' || body[i + 1] == '\\')) {
      s += body[++i];
    } else {
      s += body[i];
    }
  }
  return s;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t source_size)
      : toks_(tokens), end_pos_(source_size) {
    for (std::size_t i = 1; i < toks_.size(); ++i) {
      if (toks_[i].kind == TokenKind::symbol && toks_[i - 1].kind == TokenKind::open_paren)
        declared_.insert(std::string(toks_[i].text));
    }
  }

  AmrGraph run() {
    if (toks_.empty()) fail(0, "empty input: expected '('");
    std::string root = node(1);
    if (pos_ < toks_.size()) {
      if (toks_[pos_].kind == TokenKind::close_paren)
        fail(toks_[pos_].position, "unbalanced parentheses: unexpected ')'");
      fail(toks_[pos_].position, "unexpected content after the graph");
    }
    graph_.set_root(std::move(root));
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(std::size_t position, std::string message) {
    throw ParseFailure{{position, std::move(message), Severity::error}};
  }

  const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }
  std::size_t here() const { return pos_ < toks_.size() ? toks_[pos_].position : end_pos_; }

  std::string node(std::size_t depth) {
    const Token* open = peek();
    if (!open || open->kind != TokenKind::open_paren) fail(here(), "expected '('");
    if (depth > max_nesting_depth)
      fail(open->position, "nesting deeper than " + std::to_string(max_nesting_depth) + " levels");
    ++pos_;

    const Token* var = peek();
    if (!var || var->kind != TokenKind::symbol) fail(here(), "expected a variable after '('");
    std::string v(var->text);
    ++pos_;

    const Token* slash = peek();
    if (!slash || slash->kind != TokenKind::slash)
      fail(here(), "missing '/' concept for variable '" + v + "'");
    ++pos_;

    const Token* con = peek();
    if (!con || con->kind != TokenKind::symbol) fail(here(), "expected a concept after '/'");
    if (graph_.has_node(v)) fail(var->position, "duplicate concept declaration for variable '" + v + "'");
    graph_.add_node(v, std::string(con->text));
    ++pos_;

    while (true) {
      const Token* t = peek();
      if (!t) fail(end_pos_, "unbalanced parentheses: missing ')' for variable '" + v + "'");
      if (t->kind == TokenKind::close_paren) {
        ++pos_;
        return v;
      }
      if (t->kind != TokenKind::role) fail(t->position, "expected a role or ')'");
      std::string role(t->text);
      ++pos_;
      const Token* target = peek();
      if (!target || target->kind == TokenKind::role || target->kind == TokenKind::close_paren ||
          target->kind == TokenKind::slash) {
        fail(t->position, "role " + role + " has no target");
      }
      // Reserve the edge slot before descending so edges stay in written order.
      std::size_t slot = graph_.edge_count();
      if (target->kind == TokenKind::open_paren) {
        graph_.add_edge(v, role, NodeRef{});
        std::string child = node(depth + 1);
        graph_.mutable_edges()[slot].target = NodeRef{std::move(child)};
      } else if (target->kind == TokenKind::string_literal) {
        graph_.add_edge(v, role, Constant{unescape(target->text), true});
        ++pos_;
      } else {
        std::string sym(target->text);
        if (declared_.contains(sym)) {
          graph_.add_edge(v, role, NodeRef{std::move(sym)});
        } else {
          graph_.add_edge(v, role, Constant{std::move(sym), false});
        }
        ++pos_;
      }
    }
  }

  const std::vector<Token>& toks_;
  std::size_t end_pos_;
  std::size_t pos_ = 0;
  std::unordered_set<std::string> declared_;
  AmrGraph graph_;
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult result;
  TokenStream ts = tokenize(source);
  result.diagnostics = ts.diagnostics;
  if (!ts.ok()) return result;
  try {
    Parser p(ts.tokens, source.size());
    result.graph = p.run();
  } catch (const ParseFailure& f) {
    result.diagnostics.push_back(f.diagnostic);
  }
  return result;
}

AmrGraph parse_or_throw(std::string_view source) {
  ParseResult r = parse(source);
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) {
      if (d.severity == Severity::error) throw Error(ErrorCode::parse, to_string(d));
    }
    throw Error(ErrorCode::parse, "parse failed");
  }
  return std::move(*r.graph);
}

// ---------------------------------------------------------------------------

namespace {

void separator(std::string& out, Layout layout, std::size_t depth) {
  if (layout == Layout::single_line) {
    out += ' ';
  } else {
    out += '\n';
    out.append(4 * depth, ' ');
  }
}

void write_node(const AmrGraph& g, const std::unordered_map<std::string, std::vector<std::size_t>>& adj,
                const std::string& var, Layout layout, std::size_t depth,
                std::unordered_set<std::string>& emitted, std::string& out) {
  emitted.insert(var);
  out += '(';
  out += var;
  out += " / ";
  out += g.concept_of(var);
  if (auto it = adj.find(var); it != adj.end()) {
    for (std::size_t ei : it->second) {
      const Edge& e = g.edges()[ei];
      separator(out, layout, depth + 1);
      out += e.role;
      out += ' ';
      if (!e.targets_node()) {
        out += constant_text(e.constant());
      } else if (emitted.contains(e.target_var())) {
        out += e.target_var();
      } else {
        write_node(g, adj, e.target_var(), layout, depth + 1, emitted, out);
      }
    }
  }
  out += ')';
}

}  // namespace

std::string serialize(const AmrGraph& graph, Layout layout) {
  graph.validate();
  auto adj = graph.adjacency();
  std::unordered_set<std::string> emitted;
  std::string out;
  write_node(graph, adj, graph.root(), layout, 0, emitted, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const AmrGraph& g) : g_(g), adj_(g.adjacency()) {}

  std::string run() {
    std::string out;
    emit(g_.root(), out);
    return out;
  }

 private:
  struct Shape {
    std::uint64_t hash;
    bool pure;  // no cycle cut inside, so safe to memoize
  };

  struct SortKey {
    std::string role;
    int kind;  // 0 = constant, 1 = node
    std::string label;
    std::uint64_t shape;
    std::size_t edge;
  };

  Shape shape(const std::string& var) {
    if (auto it = memo_.find(var); it != memo_.end()) return {it->second, true};
    on_path_.insert(var);
    bool pure = true;
    std::vector<std::uint64_t> parts;
    if (auto it = adj_.find(var); it != adj_.end()) {
      for (std::size_t ei : it->second) {
        const Edge& e = g_.edges()[ei];
        std::uint64_t h = fnv1a(e.role);
        if (!e.targets_node()) {
          h = fnv1a(constant_text(e.constant()), fnv1a("=", h));
        } else if (on_path_.contains(e.target_var())) {
          h = fnv1a(g_.concept_of(e.target_var()), fnv1a("^", h));
          pure = false;
        } else {
          Shape child = shape(e.target_var());
          pure = pure && child.pure;
          h = fnv1a(std::to_string(child.hash), fnv1a("(", h));
        }
        parts.push_back(h);
      }
    }
    on_path_.erase(var);
    std::sort(parts.begin(), parts.end());
    std::uint64_t h = fnv1a(g_.concept_of(var));
    for (auto p : parts) h = fnv1a(std::to_string(p), fnv1a(",", h));
    if (pure) memo_.emplace(var, h);
    return {h, pure};
  }

  void emit(const std::string& var, std::string& out) {
    std::string name = "z" + std::to_string(names_.size());
    names_.emplace(var, name);
    out += '(';
    out += name;
    out += " / ";
    out += g_.concept_of(var);

    std::vector<SortKey> keys;
    if (auto it = adj_.find(var); it != adj_.end()) {
      for (std::size_t ei : it->second) {
        const Edge& e = g_.edges()[ei];
        if (e.targets_node()) {
          keys.push_back({e.role, 1, g_.concept_of(e.target_var()), shape(e.target_var()).hash, ei});
        } else {
          keys.push_back({e.role, 0, constant_text(e.constant()), 0, ei});
        }
      }
    }
    std::stable_sort(keys.begin(), keys.end(), [](const SortKey& a, const SortKey& b) {
      return std::tie(a.role, a.kind, a.label, a.shape) < std::tie(b.role, b.kind, b.label, b.shape);
    });
    for (const auto& k : keys) {
      const Edge& e = g_.edges()[k.edge];
      out += ' ';
      out += e.role;
      out += ' ';
      if (!e.targets_node()) {
        out += constant_text(e.constant());
      } else if (auto n = names_.find(e.target_var()); n != names_.end()) {
        out += n->second;
      } else {
        emit(e.target_var(), out);
      }
    }
    out += ')';
  }

  const AmrGraph& g_;
  std::unordered_map<std::string, std::vector<std::size_t>> adj_;
  std::unordered_map<std::string, std::uint64_t> memo_;
  std::unordered_set<std::string> on_path_;
  std::unordered_map<std::string, std::string> names_;
};

}  // namespace

std::string canonical_form(const AmrGraph& graph) {
  graph.validate();
  return Canonicalizer(graph).run();
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// "# ::id x ::snt Some text" -> {id: x, snt: Some text}
void read_metadata(std::string_view line, std::map<std::string, std::string>& meta) {
  std::size_t p = line.find("::");
  while (p != std::string_view::npos) {
    std::size_t next = line.find(" ::", p + 2);
    std::string_view field = line.substr(p + 2, next == std::string_view::npos ? std::string_view::npos : next - p - 2);
    std::size_t sp = field.find_first_of(" \t");
    std::string key(field.substr(0, sp));
    std::string value = sp == std::string_view::npos ? std::string() : trim(field.substr(sp));
    if (!key.empty()) meta[key] = value;
    p = next == std::string_view::npos ? next : next + 1;
  }
}

}  // namespace

std::vector<Document> split_documents(std::string_view src, std::vector<Diagnostic>* diagnostics) {
  std::vector<Document> docs;
  std::map<std::string, std::string> pending;
  std::size_t depth = 0, start = 0;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto warn = [&](std::size_t pos, std::string msg) {
    if (diagnostics) diagnostics->push_back({pos, std::move(msg), Severity::error});
  };
  while (i < n) {
    char c = src[i];
    if (c == '#' && (i == 0 || is_space(src[i - 1]) || src[i - 1] == '(' || src[i - 1] == ')')) {
      std::size_t eol = src.find('\n', i);
      if (eol == std::string_view::npos) eol = n;
      if (depth == 0) read_metadata(src.substr(i, eol - i), pending);
      i = eol;
    } else if (c == '"') {
      ++i;
      while (i < n && src[i] != '"') i += (src[i] == '\\' ? 2 : 1);
      ++i;
      if (depth == 0) warn(i, "string literal outside of a graph");
    } else if (c == '(') {
      if (depth++ == 0) start = i;
      ++i;
    } else if (c == ')') {
      if (depth == 0) {
        warn(i, "unbalanced parentheses: unexpected ')'");
      } else if (--depth == 0) {
        docs.push_back({std::move(pending), std::string(src.substr(start, i + 1 - start)), start});
        pending.clear();
      }
      ++i;
    } else {
      if (depth == 0 && !is_space(c)) {
        std::size_t j = i;
        while (j < n && !is_space(src[j]) && src[j] != '(') ++j;
        warn(i, "text outside of a graph: '" + std::string(src.substr(i, j - i)) + "'");
        i = j;
        continue;
      }
      ++i;
    }
  }
  if (depth > 0) {
    docs.push_back({std::move(pending), std::string(src.substr(start)), start});
  }
  return docs;
}

}  // namespace amrs3::penman
