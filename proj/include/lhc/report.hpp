#pragma once

// Check rows and JSON reports. Requires nlohmann/json.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lhc/errors.hpp"

namespace lhc {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "lhc-report/1";

/// How `actual` is compared with `expected`.
enum class Relation {
  within,    // |actual - expected| <= tolerance
  relative,  // |actual - expected| <= tolerance * |expected|
  above,     // actual > expected (tolerance unused)
};

constexpr const char* to_string(Relation r) {
  switch (r) {
    case Relation::within: return "within";
    case Relation::relative: return "relative";
    case Relation::above: return "above";
  }
  return "?";
}

inline Relation relation_from_string(const std::string& s) {
  if (s == "within") return Relation::within;
  if (s == "relative") return Relation::relative;
  if (s == "above") return Relation::above;
  throw DomainError("unknown relation '" + s + "'");
}

struct ReportRow {
  std::string name;
  /// Module area the check belongs to.
  std::string tag;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::within;
  bool pass = false;

  static bool evaluate(double expected, double actual, double tolerance, Relation rel) {
    if (!std::isfinite(actual)) return false;
    switch (rel) {
      case Relation::within: return std::abs(actual - expected) <= tolerance;
      case Relation::relative: return std::abs(actual - expected) <= tolerance * std::abs(expected);
      case Relation::above: return actual > expected;
    }
    return false;
  }

  static ReportRow make(std::string name, std::string tag, double expected, double actual, double tolerance,
                        Relation rel = Relation::within) {
    return {std::move(name), std::move(tag), expected, actual, tolerance, rel,
            evaluate(expected, actual, tolerance, rel)};
  }

  /// A residual that must not exceed `tolerance`.
  static ReportRow residual(std::string name, std::string tag, double actual, double tolerance) {
    return make(std::move(name), std::move(tag), 0.0, actual, tolerance, Relation::within);
  }

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportMetadata {
  std::string timestamp;
  std::uint64_t seed = 0;
  /// Orientation convention for vol on H^2.
  std::string orientation = "complex (dx ^ dy > 0)";

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  std::vector<std::string> arguments;
  std::vector<ReportRow> rows;
  ReportMetadata metadata;
  Json data = Json::object();

  bool pass() const {
    for (const auto& r : rows) {
      if (!r.pass) return false;
    }
    return true;
  }

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

// ---------------------------------------------------------------------------
// Canonical JSON: sorted keys, 2-space indent, doubles as %.16e, non-finite as null.

namespace detail {

inline void canonical_dump(const Json& j, std::string& out, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        canonical_dump(it.value(), out, level + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        canonical_dump(j[i], out, level + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

inline double number_or_nan(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline std::string canonical_json(const Json& j) {
  std::string out;
  detail::canonical_dump(j, out, 0);
  out += "\n";
  return out;
}

inline Json to_json(const ReportRow& r) {
  return Json{{"name", r.name},         {"tag", r.tag},   {"expected", r.expected}, {"actual", r.actual},
              {"tolerance", r.tolerance}, {"relation", to_string(r.relation)}, {"pass", r.pass}};
}

inline Json to_json(const ReportDocument& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows) rows.push_back(to_json(r));
  return Json{{"schema_version", d.schema_version},
              {"command", {{"name", d.command}, {"arguments", d.arguments}}},
              {"rows", rows},
              {"pass", d.pass()},
              {"metadata",
               {{"timestamp", d.metadata.timestamp},
                {"seed", d.metadata.seed},
                {"orientation", d.metadata.orientation}}},
              {"data", d.data}};
}

inline ReportDocument report_from_json(const Json& j) {
  ReportDocument d;
  d.schema_version = j.at("schema_version").get<std::string>();
  d.command = j.at("command").at("name").get<std::string>();
  d.arguments = j.at("command").at("arguments").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    d.rows.push_back({r.at("name").get<std::string>(), r.at("tag").get<std::string>(),
                      detail::number_or_nan(r.at("expected")), detail::number_or_nan(r.at("actual")),
                      detail::number_or_nan(r.at("tolerance")),
                      relation_from_string(r.at("relation").get<std::string>()), r.at("pass").get<bool>()});
  }
  const Json& m = j.at("metadata");
  d.metadata.timestamp = m.at("timestamp").get<std::string>();
  d.metadata.seed = m.at("seed").get<std::uint64_t>();
  d.metadata.orientation = m.at("orientation").get<std::string>();
  d.data = j.value("data", Json::object());
  return d;
}

inline std::string render_report(const ReportDocument& d) { return canonical_json(to_json(d)); }

inline void emit_report(const ReportDocument& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportWriteError("cannot open '" + path + "' for writing");
  out << render_report(d);
  out.flush();
  if (!out) throw ReportWriteError("failed writing '" + path + "'");
}

inline ReportDocument load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open report '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return report_from_json(Json::parse(ss.str()));
}

}  // namespace lhc
