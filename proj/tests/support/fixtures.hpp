#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amrs3/graph.hpp"
#include "amrs3/penman.hpp"

#ifndef AMRS3_FIXTURE_DIR
#error "AMRS3_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fx {

struct Fixture {
  std::string id;
  std::string sentence;
  std::string text;
  amrs3::AmrGraph graph;
};

inline std::string path(const std::string& name) { return std::string(AMRS3_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<Fixture> load(const std::string& name) {
  std::string text = slurp(path(name));
  std::vector<Fixture> out;
  for (auto& d : amrs3::penman::split_documents(text)) {
    out.push_back({d.metadata["id"], d.metadata["snt"], d.text, amrs3::penman::parse_or_throw(d.text)});
  }
  return out;
}

inline const std::vector<Fixture>& suite() {
  static const std::vector<Fixture> all = load("graphs.amr");
  return all;
}

inline const Fixture& by_id(const std::string& id) {
  for (const auto& f : suite()) {
    if (f.id == id) return f;
  }
  throw std::runtime_error("no fixture " + id);
}

// The reference graph (1935 move to Chaldon), in the order the tests rely on.
inline constexpr const char* reference =
    "(m / move-01 :time (d / date-entity :year 1935) :ARG0 (t / they) "
    ":ARG2 (c / city :name (n / name :op1 \"Chaldon\")) "
    ":purpose (l / live-01 :ARG0 t :location (l2 / location :name (n2 / name :op1 \"24\" :op2 \"West\" :op3 \"Chaldon\") "
    ":ARG1-of (k / know-02 :ARG2 (n3 / name :op1 \"Miss\" :op2 \"Green\"))) :time d))";

inline constexpr const char* reference_sentence =
    "In 1935 they moved to Chaldon to live at 24 West Chaldon, a cottage known as Miss Green's.";

inline constexpr const char* cottage = "(c / cottage :ARG1-of (k / know-02 :ARG2 (m / miss-green)))";

}  // namespace fx
