#include "doctest.h"

#include "amrs3/elements.hpp"
#include "amrs3/penman.hpp"
#include "../support/fixtures.hpp"

using namespace amrs3;
using penman::parse_or_throw;
using Strings = std::vector<std::string>;

TEST_CASE("predicates of the reference graph") {
  CHECK(extract_predicates(parse_or_throw(fx::reference)) == Strings{"move", "live", "know"});
}

TEST_CASE("entities of the reference graph") {
  CHECK(extract_entities(parse_or_throw(fx::reference)) ==
        Strings{"date (1935)", "they", "city (Chaldon)", "location (24 West Chaldon)"});
}

TEST_CASE("repeated predicates are listed per node") {
  CHECK(extract_predicates(parse_or_throw("(a / and :op1 (s / see-01) :op2 (s2 / see-01))")) == Strings{"see", "see"});
}

TEST_CASE("simple entity renderings") {
  CHECK(extract_entities(parse_or_throw("(a / apple)")) == Strings{"apple"});
  CHECK(extract_entities(parse_or_throw("(p / person :name (n / name :op1 \"Jeremy\" :op2 \"Thorpe\"))")) ==
        Strings{"person (Jeremy Thorpe)"});
  CHECK(extract_predicates(parse_or_throw("(a / apple)")).empty());
}

TEST_CASE("name parts follow op order, not edge order") {
  CHECK(extract_entities(parse_or_throw("(c / city :name (n / name :op2 \"York\" :op1 \"New\"))")) ==
        Strings{"city (New York)"});
}

TEST_CASE("dates render their components") {
  CHECK(extract_entities(parse_or_throw("(d / date-entity :day 3 :month 3 :year 2001)")) == Strings{"date (2001-03-03)"});
  CHECK(extract_entities(parse_or_throw("(d / date-entity :month 7 :day 14)")) == Strings{"date (07-14)"});
  CHECK(extract_entities(parse_or_throw("(d / date-entity :weekday (m / monday))")) == Strings{"date", "monday"});
}

TEST_CASE("reentrant nodes are listed once") {
  CHECK(extract_entities(parse_or_throw("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))")) == Strings{"boy"});
}

TEST_CASE("extract_elements bundles both lists") {
  auto e = extract_elements(parse_or_throw(fx::reference));
  CHECK(e.predicates.size() == 3);
  CHECK(e.entities.size() == 4);
}

TEST_CASE("anonymize replaces names with numbered placeholders") {
  auto g = parse_or_throw(
      "(m / meet-03 :ARG0 (p / person :wiki \"Barack_Obama\" :name (n / name :op1 \"Barack\" :op2 \"Obama\")) "
      ":ARG1 (p2 / person :name (n2 / name :op1 \"Angela\" :op2 \"Merkel\")) "
      ":location (c / city :name (n3 / name :op1 \"Berlin\")))");
  auto a = anonymize(g);
  REQUIRE(a.map.entries.size() == 3);
  CHECK(a.map.entries[0].token == "PERSON_0");
  CHECK(a.map.entries[0].original == "Barack Obama");
  CHECK(a.map.entries[1].token == "PERSON_1");
  CHECK(a.map.entries[2].token == "CITY_0");
  CHECK(a.map.entries[2].category == "CITY");
  CHECK(penman::serialize(a.graph) ==
        "(m / meet-03 :ARG0 (p / person :name (n / name :op1 \"PERSON_0\")) :ARG1 (p2 / person :name (n2 / name :op1 "
        "\"PERSON_1\")) :location (c / city :name (n3 / name :op1 \"CITY_0\")))");
}

TEST_CASE("anonymize leaves graphs without names unchanged") {
  auto g = parse_or_throw(fx::cottage);
  auto a = anonymize(g);
  CHECK(a.map.empty());
  CHECK(penman::canonical_form(a.graph) == penman::canonical_form(g));
}

TEST_CASE("category names are sanitized") {
  auto a = anonymize(parse_or_throw("(o / government-organization :name (n / name :op1 \"EU\"))"));
  CHECK(a.map.entries.at(0).token == "GOVERNMENT_ORGANIZATION_0");
}

TEST_CASE("deanonymize substitutes whole tokens only") {
  AnonymizationMap map{{{"PERSON_1", "Angela Merkel", "PERSON"}, {"PERSON_10", "Ada Lovelace", "PERSON"}}};
  CHECK(deanonymize("PERSON_10 met PERSON_1.", map) == "Ada Lovelace met Angela Merkel.");
  CHECK(deanonymize("XPERSON_1 and PERSON_1x stay", map) == "XPERSON_1 and PERSON_1x stay");
  CHECK(deanonymize("", map).empty());
}

TEST_CASE("anonymization round trip over the named-entity fixtures") {
  for (const auto& f : fx::load("named_entities.amr")) {
    CAPTURE(f.id);
    auto a = anonymize(f.graph);
    std::string text;
    for (const auto& p : a.map.entries) text += p.token + " ; ";
    std::string restored = deanonymize(text, a.map);
    for (const auto& p : a.map.entries) {
      CHECK(restored.find(p.original) != std::string::npos);
      CHECK(restored.find(p.token) == std::string::npos);
    }
  }
}
