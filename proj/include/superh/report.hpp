#pragma once

#include <superh/integration.hpp>

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superh {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Degenerate, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Degenerate:
      return "degenerate";
    default:
      return "inconclusive";
  }
}

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Status status_from_string(const std::string& s) {
  for (auto st : {Status::Pass, Status::Fail, Status::Degenerate, Status::Inconclusive})
    if (to_string(st) == s) return st;
  throw FixtureError("unknown status '" + s + "'");
}

/// Exit code contract: 0 pass or degenerate, 1 fail or inconclusive.
inline int exit_code(Status s) { return s == Status::Pass || s == Status::Degenerate ? 0 : 1; }

inline Json to_json(const ScaledRational& v) { return Json{{"q", v.q().str()}, {"h", v.h()}}; }

inline bool is_scaled_rational(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("q") && j.contains("h") && j["q"].is_string() &&
         j["h"].is_number_integer();
}

inline ScaledRational scaled_rational_from_json(const Json& j) {
  if (!is_scaled_rational(j)) throw FixtureError("expected {\"q\": \"a/b\", \"h\": int}, got " + j.dump());
  try {
    return {Rational::parse(j["q"].get<std::string>()), j["h"].get<int>()};
  } catch (const std::logic_error& e) {
    throw FixtureError(e.what());
  }
}

struct Report {
  std::string command;
  Json parameters = Json::object();
  std::vector<Json> rows;
  Status status = Status::Pass;
  std::optional<std::string> counterexample;

  /// Records a failure; the first counterexample is kept.
  void fail(const std::string& what) {
    status = Status::Fail;
    if (!counterexample) counterexample = what;
  }
  /// Raises the status to s unless something more severe is already recorded
  /// (fail > inconclusive > degenerate > pass).
  void raise(Status s) {
    auto rank = [](Status x) {
      switch (x) {
        case Status::Fail:
          return 3;
        case Status::Inconclusive:
          return 2;
        case Status::Degenerate:
          return 1;
        default:
          return 0;
      }
    };
    if (rank(s) > rank(status)) status = s;
  }

  friend bool operator==(const Report&, const Report&) = default;
};

inline Json to_json(const Report& r) {
  if (r.status == Status::Fail && !r.counterexample) throw std::logic_error("Report: fail without counterexample");
  Json j;
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) j["rows"].push_back(row);
  j["status"] = to_string(r.status);
  j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
  return j;
}

inline Report report_from_json(const Json& j) {
  if (!j.is_object()) throw FixtureError("report must be a JSON object");
  for (const char* key : {"command", "parameters", "rows", "status", "counterexample"})
    if (!j.contains(key)) throw FixtureError(std::string("report is missing '") + key + "'");
  if (!j["command"].is_string() || !j["parameters"].is_object() || !j["rows"].is_array() || !j["status"].is_string())
    throw FixtureError("report field has the wrong type");
  Report r;
  r.command = j["command"].get<std::string>();
  r.parameters = j["parameters"];
  for (const auto& row : j["rows"]) {
    if (!row.is_object()) throw FixtureError("row must be an object");
    for (const auto& [key, value] : row.items())
      if (value.is_object()) (void)scaled_rational_from_json(value);
    r.rows.push_back(row);
  }
  r.status = status_from_string(j["status"].get<std::string>());
  if (!j["counterexample"].is_null()) {
    if (!j["counterexample"].is_string()) throw FixtureError("counterexample must be a string or null");
    r.counterexample = j["counterexample"].get<std::string>();
  }
  if (r.status == Status::Fail && !r.counterexample) throw FixtureError("status fail requires a counterexample");
  return r;
}

/// Parses a fixture written with --format json.
inline Report load_fixture(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FixtureError(e.what());
  }
  return report_from_json(j);
}

inline Report load_fixture(const std::string& text) {
  std::istringstream in(text);
  return load_fixture(in);
}

enum class Format { Table, Json, Csv };

namespace detail {

inline std::string cell_text(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (is_scaled_rational(v)) return scaled_rational_from_json(v).str();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + cell_text(e);
    return s;
  }
  return v.dump();
}

inline std::vector<std::string> columns(const Report& r) {
  std::vector<std::string> cols;
  for (const auto& row : r.rows)
    for (const auto& [key, value] : row.items())
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
  return cols;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string render(const Report& r, Format f) {
  if (f == Format::Json) return to_json(r).dump(2) + "\n";
  const auto cols = detail::columns(r);
  std::ostringstream out;
  if (f == Format::Csv) {
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << detail::csv_escape(cols[c]);
    out << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t c = 0; c < cols.size(); ++c)
        out << (c ? "," : "") << detail::csv_escape(row.contains(cols[c]) ? detail::cell_text(row[cols[c]]) : "");
      out << "\n";
    }
    return out.str();
  }
  out << r.command;
  for (const auto& [key, value] : r.parameters.items()) out << "  " << key << "=" << detail::cell_text(value);
  out << "\n";
  if (!cols.empty()) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : cols) width.push_back(c.size());
    for (const auto& row : r.rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        line.push_back(row.contains(cols[c]) ? detail::cell_text(row[cols[c]]) : "");
        width[c] = std::max(width[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        out << (c ? "  " : "") << line[c];
        if (c + 1 < line.size()) out << std::string(width[c] - line[c].size(), ' ');
      }
      out << "\n";
    };
    emit(cols);
    for (const auto& line : cells) emit(line);
  }
  out << "status: " << to_string(r.status) << "\n";
  if (r.counterexample) out << "counterexample: " << *r.counterexample << "\n";
  return out.str();
}

}  // namespace superh
