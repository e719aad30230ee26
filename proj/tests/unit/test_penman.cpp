#include "doctest.h"

#include <algorithm>
#include <random>

#include "amrs3/error.hpp"
#include "amrs3/penman.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"
#include "../support/random_graph.hpp"

using namespace amrs3;
using penman::canonical_form;
using penman::parse;
using penman::parse_or_throw;
using penman::serialize;

TEST_CASE("tokenize splits roles, symbols and strings") {
  auto ts = penman::tokenize(R"((a / apple :quant 2 :name "Big \"A\""))");
  REQUIRE(ts.ok());
  std::vector<penman::TokenKind> kinds;
  for (const auto& t : ts.tokens) kinds.push_back(t.kind);
  using K = penman::TokenKind;
  CHECK(kinds == std::vector<K>{K::open_paren, K::symbol, K::slash, K::symbol, K::role, K::symbol, K::role,
                                K::string_literal, K::close_paren});
  CHECK(ts.tokens[4].text == ":quant");
  CHECK(ts.tokens[0].position == 0);
}

TEST_CASE("tokenize reports an unterminated string without aborting") {
  auto ts = penman::tokenize(R"((n / name :op1 "Chal)");
  CHECK_FALSE(ts.ok());
  REQUIRE_FALSE(ts.diagnostics.empty());
  CHECK(ts.diagnostics[0].message.find("unterminated") != std::string::npos);
  CHECK(ts.diagnostics[0].position == 15);
}

TEST_CASE("comments and alignment markers are ignored") {
  auto g = parse_or_throw("# a comment\n(s~e.1 / strip-01 # trailing\n :ARG1 (m~e.0 / marker))");
  CHECK(g.root() == "s");
  CHECK(g.concept_of("m") == "marker");
  CHECK(g.edge_count() == 1);
}

TEST_CASE("parse builds nodes, edges and constants") {
  auto g = parse_or_throw(R"((w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b :polarity -) :op1 "X Y"))");
  CHECK(g.root() == "w");
  CHECK(g.node_count() == 3);
  REQUIRE(g.edge_count() == 5);
  const auto& e = g.edges();
  CHECK(e[0].source == "w");
  CHECK(e[0].role == ":ARG0");
  CHECK(e[0].target_var() == "b");
  CHECK(e[3].constant() == Constant{"-", false});
  CHECK(e[4].constant() == Constant{"X Y", true});
  CHECK(e[2].target_var() == "b");
}

TEST_CASE("forward references resolve to variables declared later") {
  auto g = parse_or_throw("(s / see-01 :ARG0 x :ARG1 (b / bird :poss (x / person)))");
  CHECK(g.edges()[0].targets_node());
  CHECK(g.edges()[0].target_var() == "x");
}

TEST_CASE("undeclared symbols are constants") {
  auto g = parse_or_throw("(t / touch-01 :mode imperative)");
  CHECK_FALSE(g.edges()[0].targets_node());
  CHECK(g.edges()[0].constant().text == "imperative");
}

TEST_CASE("malformed input yields positioned diagnostics") {
  struct Case {
    const char* src;
    const char* fragment;
  };
  for (auto c : {Case{"(a / apple", "unbalanced"}, Case{"(a :ARG0 (b / boy))", "missing '/'"},
                 Case{"(a / apple :ARG0)", "has no target"}, Case{"(a / apple) (b / boy)", "after the graph"},
                 Case{"(a / apple :ARG0 (a / boy))", "duplicate"}, Case{"", ""}}) {
    CAPTURE(c.src);
    auto r = parse(c.src);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].message.find(c.fragment) != std::string::npos);
    CHECK(penman::to_string(r.diagnostics[0]).starts_with("error at byte "));
  }
}

TEST_CASE("parse_or_throw raises a parse error") {
  try {
    parse_or_throw("(a / apple");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
  }
}

TEST_CASE("nesting deeper than the limit is rejected") {
  std::string deep;
  for (std::size_t i = 0; i <= penman::max_nesting_depth; ++i) deep += "(v" + std::to_string(i) + " / x :mod ";
  deep += "y";
  for (std::size_t i = 0; i <= penman::max_nesting_depth; ++i) deep += ")";
  auto r = parse(deep);
  CHECK_FALSE(r.ok());
}

TEST_CASE("serialize writes a single line and an indented layout") {
  auto g = parse_or_throw("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  CHECK(serialize(g) == "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  CHECK(serialize(g, penman::Layout::indented) ==
        "(w / want-01\n    :ARG0 (b / boy)\n    :ARG1 (g / go-02\n        :ARG0 b))");
}

TEST_CASE("serialize escapes quoted constants") {
  auto g = parse_or_throw(R"((s / string-entity :value "a\"b\\c"))");
  CHECK(g.edges()[0].constant().text == "a\"b\\c");
  CHECK(serialize(g) == R"((s / string-entity :value "a\"b\\c"))");
}

TEST_CASE("canonical form ignores variable names and edge order") {
  auto a = parse_or_throw("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  auto b = parse_or_throw("(x / want-01 :ARG1 (y / go-02 :ARG0 (z / boy)) :ARG0 z)");
  CHECK(canonical_form(a) == canonical_form(b));
  auto c = parse_or_throw("(x / want-01 :ARG1 (y / go-02 :ARG0 (z / girl)) :ARG0 z)");
  CHECK(canonical_form(a) != canonical_form(c));
  CHECK(canonical_form(a).starts_with("(z0 / want-01"));
}

TEST_CASE("canonical form distinguishes quoted and bare constants") {
  CHECK(canonical_form(parse_or_throw("(a / x :op1 \"5\")")) != canonical_form(parse_or_throw("(a / x :op1 5)")));
}

TEST_CASE("round trip over the fixture suite, checked by isomorphism") {
  const auto& all = fx::suite();
  REQUIRE(all.size() >= 50);
  for (const auto& f : all) {
    CAPTURE(f.id);
    auto again = parse_or_throw(serialize(f.graph));
    CHECK(oracle::isomorphic(f.graph, again));
    CHECK(canonical_form(again) == canonical_form(f.graph));
    auto indented = parse_or_throw(serialize(f.graph, penman::Layout::indented));
    CHECK(canonical_form(indented) == canonical_form(f.graph));
  }
}

TEST_CASE("canonical form is invariant under renaming and edge shuffling") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = gen::random_graph(rng, 12);
    auto rename = [](const std::string& v) { return "r" + v.substr(1) + "x"; };
    AmrGraph h;
    auto nodes = g.nodes();
    std::shuffle(nodes.begin(), nodes.end(), rng);
    for (const auto& [v, c] : nodes) h.add_node(rename(v), c);
    h.set_root(rename(g.root()));
    auto edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto e : edges) {
      e.source = rename(e.source);
      if (e.targets_node()) e.target = NodeRef{rename(e.target_var())};
      h.add_edge(e);
    }
    CAPTURE(serialize(g));
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_form(parse_or_throw(serialize(h))) == canonical_form(g));
    CHECK(oracle::isomorphic(g, parse_or_throw(serialize(h))));
  }
}

TEST_CASE("split_documents reads metadata and separates graphs") {
  std::vector<penman::Diagnostic> diags;
  auto docs = penman::split_documents(
      "# ::id a1\n# ::snt One.\n(a / apple)\n\n# plain comment\n(b / boy :mod \"#x\")\n", &diags);
  CHECK(diags.empty());
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].metadata.at("id") == "a1");
  CHECK(docs[0].metadata.at("snt") == "One.");
  CHECK(parse_or_throw(docs[0].text).concept_of("a") == "apple");
  CHECK(parse_or_throw(docs[1].text).edges()[0].constant().text == "#x");
}
