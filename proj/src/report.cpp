#include "bures/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "bures/errors.hpp"

namespace bures::report {

using nlohmann::ordered_json;
using probability::ScenarioResult;
using probability::Target;

namespace {

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double read_number(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("report: missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw UsageError(std::string("report: field '") + key + "' is not a number");
  return v.get<double>();
}

template <class T>
T read(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("report: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("report: field '") + key + "' has the wrong type");
  }
}

}  // namespace

bool overall_pass(const std::vector<ScenarioResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const ScenarioResult& r) { return r.passed(); });
}

ordered_json to_json(const ScenarioResult& r) {
  ordered_json j;
  j["family"] = r.family;
  j["Z"] = number(r.Z);
  j["S"] = number(r.S);
  j["p_sep"] = r.p_sep ? number(*r.p_sep) : ordered_json(nullptr);
  j["improper"] = r.improper;
  j["err"] = number(r.err);
  j["converged"] = r.converged;
  j["values"] = ordered_json::array();
  for (const auto& [name, value] : r.values) {
    j["values"].push_back({{"name", name}, {"value", number(value)}});
  }
  j["targets"] = ordered_json::array();
  for (const Target& t : r.targets) {
    j["targets"].push_back({{"name", t.name},
                            {"paper", number(t.paper)},
                            {"computed", number(t.computed)},
                            {"tol", number(t.tol)},
                            {"pass", t.pass}});
  }
  return j;
}

ScenarioResult result_from_json(const ordered_json& j) {
  if (!j.is_object()) throw UsageError("report: scenario result must be an object");
  ScenarioResult r;
  r.family = read<std::string>(j, "family");
  r.Z = read_number(j, "Z");
  r.S = read_number(j, "S");
  if (!j.contains("p_sep")) throw UsageError("report: missing field 'p_sep'");
  if (!j.at("p_sep").is_null()) r.p_sep = read_number(j, "p_sep");
  r.improper = read<bool>(j, "improper");
  r.err = j.contains("err") ? read_number(j, "err") : 0.0;
  r.converged = j.contains("converged") ? read<bool>(j, "converged") : true;
  if (j.contains("values")) {
    for (const auto& v : j.at("values")) {
      r.values.emplace_back(read<std::string>(v, "name"), read_number(v, "value"));
    }
  }
  for (const auto& t : read<ordered_json>(j, "targets")) {
    Target target;
    target.name = read<std::string>(t, "name");
    target.paper = read_number(t, "paper");
    target.computed = read_number(t, "computed");
    target.tol = read_number(t, "tol");
    target.pass = read<bool>(t, "pass");
    r.targets.push_back(target);
  }
  return r;
}

ordered_json to_json(const ReportDocument& doc) {
  ordered_json j;
  j["version"] = doc.version;
  j["pass"] = doc.pass;
  j["results"] = ordered_json::array();
  for (const auto& r : doc.results) j["results"].push_back(to_json(r));
  return j;
}

ReportDocument report_from_json(const ordered_json& j) {
  if (!j.is_object()) throw UsageError("report: document must be an object");
  ReportDocument doc;
  doc.version = read<std::string>(j, "version");
  doc.pass = read<bool>(j, "pass");
  for (const auto& r : read<ordered_json>(j, "results")) doc.results.push_back(result_from_json(r));
  return doc;
}

std::string emit(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("report: invalid JSON: ") + e.what());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ScenarioResult& r) {
  std::ostringstream out;
  out << "name,computed,paper,tol,abs_diff,pass\n";
  out << "Z," << format_number(r.Z) << ",,,,\n";
  out << "S," << format_number(r.S) << ",,,,\n";
  out << "p_sep," << (r.p_sep ? format_number(*r.p_sep) : "") << ",,,,\n";
  out << "err," << format_number(r.err) << ",,,,\n";
  for (const auto& [name, value] : r.values) out << name << "," << format_number(value) << ",,,,\n";
  for (const Target& t : r.targets) {
    out << "target:" << t.name << "," << format_number(t.computed) << "," << format_number(t.paper) << ","
        << format_number(t.tol) << "," << format_number(t.abs_diff()) << "," << (t.pass ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string to_text(const ScenarioResult& r) {
  char line[256];
  std::ostringstream out;
  out << r.family << (r.improper ? "  (improper prior)" : "") << (r.converged ? "" : "  (NOT CONVERGED)") << "\n";
  std::snprintf(line, sizeof line, "  Z      %.12g\n  S      %.12g\n", r.Z, r.S);
  out << line;
  if (r.p_sep) {
    std::snprintf(line, sizeof line, "  p_sep  %.12g  (err %.2g)\n", *r.p_sep, r.err);
  } else {
    std::snprintf(line, sizeof line, "  p_sep  -  (err %.2g)\n", r.err);
  }
  out << line;
  for (const auto& [name, value] : r.values) {
    std::snprintf(line, sizeof line, "  %-28s %.12g\n", name.c_str(), value);
    out << line;
  }
  for (const Target& t : r.targets) {
    std::snprintf(line, sizeof line, "  [%s] %-26s paper %-14.10g computed %-18.12g |diff| %-9.2g tol %.2g\n",
                  t.pass ? "PASS" : "FAIL", t.name.c_str(), t.paper, t.computed, t.abs_diff(), t.tol);
    out << line;
  }
  return out.str();
}

}  // namespace bures::report
