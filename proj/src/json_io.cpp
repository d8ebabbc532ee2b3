#include "json_io.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "errors.hpp"

namespace comasslab {

namespace {
using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) { raise(Errc::parse_error, msg); }

// Re-throws core validation failures as parse errors tagged with the term's
// position in the input array, so the caller sees "term 3: ..." rather than a
// bare invariant violation.
template <typename F>
void with_term_context(size_t term_idx, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    parse_fail("term " + std::to_string(term_idx) + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Covector covector_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("top-level value must be an object");
  for (const char* key : {"n", "p", "terms"})
    if (!doc.contains(key)) parse_fail(std::string("missing required key \"") + key + "\"");
  if (!doc["n"].is_number_integer()) parse_fail("\"n\" must be an integer");
  if (!doc["p"].is_number_integer()) parse_fail("\"p\" must be an integer");
  if (!doc["terms"].is_array()) parse_fail("\"terms\" must be an array");

  const int n = doc["n"].get<int>();
  const int p = doc["p"].get<int>();
  Covector out = [&] {
    try {
      return Covector(n, p);
    } catch (const Error& e) {
      parse_fail(e.what());
    }
  }();

  std::set<MultiIndex> seen;
  size_t idx = 0;
  for (const auto& term : doc["terms"]) {
    if (!term.is_object()) parse_fail("term " + std::to_string(idx) + ": must be an object");
    for (auto it = term.begin(); it != term.end(); ++it)
      if (it.key() != "index" && it.key() != "coeff")
        parse_fail("term " + std::to_string(idx) + ": unknown key \"" + it.key() + "\"");
    if (!term.contains("index") || !term["index"].is_array())
      parse_fail("term " + std::to_string(idx) + ": missing or non-array \"index\"");
    if (!term.contains("coeff") || !term["coeff"].is_number())
      parse_fail("term " + std::to_string(idx) + ": missing or non-numeric \"coeff\"");

    std::vector<int> entries;
    for (const auto& e : term["index"]) {
      if (!e.is_number_integer())
        parse_fail("term " + std::to_string(idx) + ": index entries must be integers");
      entries.push_back(e.get<int>());
    }
    with_term_context(idx, [&] {
      MultiIndex I(std::move(entries));
      if (!seen.insert(I).second)
        raise(Errc::parse_error, "duplicate multi-index " + I.to_string());
      out.set_coefficient(I, term["coeff"].get<double>());
    });
    ++idx;
  }
  return out;
}

std::string covector_to_json(const Covector& a) {
  std::string s = "{\"n\": " + std::to_string(a.n()) + ", \"p\": " + std::to_string(a.p()) +
                  ", \"terms\": [";
  bool first = true;
  for (const auto& [I, v] : a.terms()) {
    if (!first) s += ", ";
    first = false;
    s += "{\"index\": [";
    const auto& e = I.entries();
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    s += "], \"coeff\": " + format_double(v) + "}";
  }
  s += "]}";
  return s;
}

}  // namespace comasslab
