#include <cmath>
#include <limits>

#include <doctest.h>

#include "bures/errors.hpp"
#include "bures/report.hpp"

using namespace bures;
using probability::ScenarioResult;
using probability::Target;

namespace {

ScenarioResult sample_result() {
  ScenarioResult r;
  r.family = "s1_equal_intra";
  r.Z = 1.5707963267948966;
  r.S = 0.7853981633974483;
  r.p_sep = 0.5;
  r.err = 6.5e-12;
  r.values = {{"mass_eta_pos", 0.2928932188134524}};
  r.targets = {{"p_sep", 0.5, 0.5, 1e-8, true}, {"eof_weighted", 0.0441763, 0.2786524796, 1e-4, false}};
  return r;
}

}  // namespace

TEST_CASE("scenario results survive a JSON round trip") {
  const ScenarioResult r = sample_result();
  const auto back = report::result_from_json(report::parse(report::emit(report::to_json(r))));
  CHECK(back == r);
}

TEST_CASE("non-finite numbers become null and read back as NaN") {
  ScenarioResult r = sample_result();
  r.Z = std::numeric_limits<double>::infinity();
  r.p_sep.reset();
  r.improper = true;
  const auto j = report::to_json(r);
  CHECK(j.at("Z").is_null());
  CHECK(j.at("p_sep").is_null());
  const auto back = report::result_from_json(report::parse(report::emit(j)));
  CHECK(std::isnan(back.Z));
  CHECK_FALSE(back.p_sep);
  CHECK(back.improper);
}

TEST_CASE("report documents round trip and carry the overall verdict") {
  report::ReportDocument doc;
  doc.results = {sample_result()};
  doc.pass = report::overall_pass(doc.results);
  CHECK_FALSE(doc.pass);
  const auto back = report::report_from_json(report::parse(report::emit(report::to_json(doc))));
  CHECK(back.version == doc.version);
  CHECK(back.pass == doc.pass);
  REQUIRE(back.results.size() == 1);
  CHECK(back.results[0] == doc.results[0]);
  doc.results[0].targets.pop_back();
  CHECK(report::overall_pass(doc.results));
}

TEST_CASE("malformed JSON is a usage error") {
  CHECK_THROWS_AS((void)report::parse("{"), UsageError);
  CHECK_THROWS_AS((void)report::result_from_json(report::parse("{\"family\": 3}")), UsageError);
  CHECK_THROWS_AS((void)report::result_from_json(report::parse("[]")), UsageError);
  CHECK_THROWS_AS((void)report::report_from_json(report::parse("{\"version\": \"1\"}")), UsageError);
}

TEST_CASE("CSV layout") {
  const std::string csv = report::to_csv(sample_result());
  CHECK(csv.rfind("name,computed,paper,tol,abs_diff,pass\n", 0) == 0);
  CHECK(csv.find("p_sep,0.5,,,,\n") != std::string::npos);
  CHECK(csv.find("target:eof_weighted,0.2786524796,0.0441763,1e-04,") != std::string::npos);
  CHECK(csv.find(",false\n") != std::string::npos);
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(report::format_number(0.5) == "0.5");
  CHECK(report::format_number(0.1) == "0.1");
  CHECK(report::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(report::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(report::format_number(std::nan("")) == "nan");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(report::format_number(x)) == x);
}

TEST_CASE("text output marks failures") {
  const std::string text = report::to_text(sample_result());
  CHECK(text.find("[PASS] p_sep") != std::string::npos);
  CHECK(text.find("[FAIL] eof_weighted") != std::string::npos);
}
