#pragma once

#include "glab/io/json_util.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace glab::cli {

enum class Verdict { pass, fail, cited };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::cited: return "cited, not mechanized";
  }
  return "?";
}

/// One check. The anchor names the mathematical statement the check exercises,
/// or is "plumbing".
struct Record {
  std::string name;
  std::string anchor;
  io::Json parameters = io::Json::object();
  Verdict verdict = Verdict::pass;
  io::Json evidence = io::Json::object();
};

struct Report {
  io::Json config = io::Json::object();
  std::vector<Record> records;

  bool passed() const {
    for (const auto& r : records)
      if (r.verdict == Verdict::fail) return false;
    return true;
  }

  io::Json to_json() const {
    io::Json recs = io::Json::array();
    for (const auto& r : records)
      recs.push_back({{"name", r.name},
                      {"anchor", r.anchor},
                      {"parameters", r.parameters},
                      {"verdict", to_string(r.verdict)},
                      {"evidence", r.evidence}});
    return {{"config", config}, {"records", recs}, {"overall", passed() ? "pass" : "fail"}};
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& r : records) {
      os << (r.verdict == Verdict::pass ? "PASS " : r.verdict == Verdict::fail ? "FAIL " : "CITED") << "  " << r.name
         << "  (" << r.anchor << ")\n";
      if (!r.evidence.empty()) os << "       " << r.evidence.dump() << "\n";
    }
    os << "overall: " << (passed() ? "pass" : "fail") << "\n";
    return os.str();
  }
};

}  // namespace glab::cli
