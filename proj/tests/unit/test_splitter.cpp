#include "doctest.h"

#include <random>
#include <set>

#include "amrs3/error.hpp"
#include "amrs3/penman.hpp"
#include "amrs3/splitter.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"
#include "../support/random_graph.hpp"

using namespace amrs3;
using penman::parse_or_throw;
using penman::serialize;

namespace {

std::vector<std::pair<std::string, SubgraphOrigin>> provenance(const SplitResult& r) {
  std::vector<std::pair<std::string, SubgraphOrigin>> out;
  for (const auto& p : r.provenance) out.emplace_back(p.root, p.origin);
  return out;
}

std::set<std::string> roots_with(const SplitResult& r, SubgraphOrigin o) {
  std::set<std::string> out;
  for (const auto& p : r.provenance) {
    if (p.origin == o) out.insert(p.root);
  }
  return out;
}

}  // namespace

TEST_CASE("reference graph splits at move, know and live") {
  auto g = parse_or_throw(fx::reference);
  auto r = split(g, {2, true});
  using O = SubgraphOrigin;
  CHECK(provenance(r) == std::vector<std::pair<std::string, O>>{{"m", O::original_root}, {"k", O::rule3}, {"l", O::rule1}});
  REQUIRE(r.subgraphs.size() == 3);
  CHECK(serialize(r.subgraphs[0]) ==
        "(m / move-01 :time (d / date-entity :year 1935) :ARG0 (t / they) :ARG2 (c / city :name (n / name :op1 "
        "\"Chaldon\")) :purpose (l / live-01))");
  CHECK(serialize(r.subgraphs[1]) ==
        "(k / know-02 :ARG1 (l2 / location :name (n2 / name :op1 \"24\" :op2 \"West\" :op3 \"Chaldon\")) :ARG2 (n3 / "
        "name :op1 \"Miss\" :op2 \"Green\"))");
  CHECK(serialize(r.subgraphs[2]) ==
        "(l / live-01 :ARG0 (t / they) :location (l2 / location :name (n2 / name :op1 \"24\" :op2 \"West\" :op3 "
        "\"Chaldon\")) :time (d / date-entity :year 1935))");
  CHECK(node_coverage(g, r) == 1.0);
}

TEST_CASE("reference graph without Rule 3 keeps know-02 under live-01") {
  auto g = parse_or_throw(fx::reference);
  auto r = split(g, {2, false});
  using O = SubgraphOrigin;
  CHECK(provenance(r) == std::vector<std::pair<std::string, O>>{{"m", O::original_root}, {"l", O::rule1}});
  CHECK(r.subgraphs[1].has_node("k"));
  CHECK(node_coverage(g, r) == 1.0);
}

TEST_CASE("cottage example promotes know-02") {
  auto g = parse_or_throw(fx::cottage);
  auto r = split(g);
  REQUIRE(r.subgraphs.size() == 2);
  CHECK(serialize(r.subgraphs[0]) == "(c / cottage)");
  CHECK(serialize(r.subgraphs[1]) == "(k / know-02 :ARG1 (c / cottage) :ARG2 (m / miss-green))");
  CHECK(split(g, {2, false}).subgraphs.size() <= r.subgraphs.size());
  CHECK(split(g, {2, false}).subgraphs.size() == 1);
}

TEST_CASE("a single node splits into itself") {
  auto r = split(parse_or_throw("(a / apple)"));
  REQUIRE(r.subgraphs.size() == 1);
  CHECK(serialize(r.subgraphs[0]) == "(a / apple)");
  CHECK(to_string(r.provenance[0].origin) == "original-root");
}

TEST_CASE("sigma zero promotes every predicate with arguments") {
  auto g = parse_or_throw("(s / say-01 :ARG0 (p / person) :ARG1 (g / go-02 :ARG0 p))");
  auto r = split(g, {0, true});
  CHECK(roots_with(r, SubgraphOrigin::rule1) == std::set<std::string>{"g"});
  CHECK(serialize(r.subgraphs[0]) == "(s / say-01 :ARG0 (p / person) :ARG1 (g / go-02))");
  CHECK(serialize(r.subgraphs[1]) == "(g / go-02 :ARG0 (p / person))");
}

TEST_CASE("revisited nodes keep only non-core relations") {
  // p is fully expanded in the first subgraph; the second sees only its name.
  auto g = parse_or_throw(
      "(s / say-01 :ARG0 (p / person :ARG0-of (h / have-03 :ARG1 (c / car)) :name (n / name :op1 \"Al\")) "
      ":ARG1 (g / give-01 :ARG0 p :ARG1 (b / book) :ARG2 (x / boy)))");
  auto r = split(g, {2, false});
  REQUIRE(r.subgraphs.size() == 2);
  CHECK(r.provenance[1].root == "g");
  CHECK(serialize(r.subgraphs[1]) ==
        "(g / give-01 :ARG0 (p / person :name (n / name :op1 \"Al\")) :ARG1 (b / book) :ARG2 (x / boy))");
}

TEST_CASE("cycles terminate") {
  const auto& f = fx::by_id("fx56");
  for (bool rule3 : {true, false}) {
    auto r = split(f.graph, {0, rule3});
    CHECK(node_coverage(f.graph, r) == 1.0);
  }
}

TEST_CASE("Rule 1 roots match the oracle on fixtures and random graphs") {
  std::vector<AmrGraph> graphs;
  for (const auto& f : fx::suite()) graphs.push_back(f.graph);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) graphs.push_back(gen::random_graph(rng));
  for (const auto& g : graphs) {
    for (SplitConfig cfg : {SplitConfig{2, true}, SplitConfig{2, false}, SplitConfig{0, true}, SplitConfig{1, false}}) {
      CAPTURE(serialize(g));
      CAPTURE(cfg.sigma);
      CAPTURE(cfg.apply_rule3);
      auto r = split(g, cfg);
      CHECK(roots_with(r, SubgraphOrigin::rule1) == oracle::rule1_roots(g, cfg));
      auto cands = oracle::rule3_candidates(g);
      std::set<std::string> expect3;
      if (cfg.apply_rule3) {
        for (const auto& c : cands) {
          if (c != g.root()) expect3.insert(c);
        }
      }
      CHECK(roots_with(r, SubgraphOrigin::rule3) == expect3);
      CHECK(r.provenance.at(0).root == g.root());
      CHECK(oracle::coverage(g, r.subgraphs) == 1.0);
      CHECK(node_coverage(g, r) == 1.0);
      for (std::size_t k = 0; k < r.subgraphs.size(); ++k) {
        CHECK(r.subgraphs[k].root() == r.provenance[k].root);
        r.subgraphs[k].validate();
      }
    }
  }
}

TEST_CASE("subgraphs only contain input nodes with input concepts") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto g = gen::random_graph(rng);
    auto r = split(g);
    for (const auto& s : r.subgraphs) {
      for (const auto& [v, c] : s.nodes()) {
        REQUIRE(g.has_node(v));
        CHECK(g.concept_of(v) == c);
      }
    }
  }
}

TEST_CASE("split is deterministic") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto g = gen::random_graph(rng);
    auto a = split(g), b = split(g);
    REQUIRE(a.subgraphs.size() == b.subgraphs.size());
    for (std::size_t k = 0; k < a.subgraphs.size(); ++k) CHECK(serialize(a.subgraphs[k]) == serialize(b.subgraphs[k]));
  }
}

TEST_CASE("coverage counts missing nodes") {
  auto g = parse_or_throw("(a / and :op1 (b / boy) :op2 (c / cat))");
  CHECK(node_coverage(g, std::vector<AmrGraph>{parse_or_throw("(a / and :op1 (b / boy))")}) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(node_coverage(g, std::vector<AmrGraph>{}) == 0.0);
}

TEST_CASE("split rejects malformed graphs") {
  AmrGraph g;
  g.add_node("a", "apple");
  g.set_root("zz");
  CHECK_THROWS_AS(split(g), Error);
}
