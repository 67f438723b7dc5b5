#pragma once

// JSON and plain-text renderings of verdicts, table runs, normal spaces and
// pullbacks. Field names are stable; docs/report.schema.json describes the
// verdict report.

#include <optional>
#include <string>

#include <json.hpp>

#include "lipeq/analyzer.hpp"
#include "lipeq/curve.hpp"
#include "lipeq/tangent.hpp"

namespace lipeq {

using Json = nlohmann::ordered_json;

// How the germ and direction were specified on input.
struct ReportContext {
  std::optional<int> catalog;
  int k = 0;
  int l = 0;
  std::string germ_source = "catalog";  // or a file path
  Coefficients theta_coefficients;
  int max_exponent = 0;
  std::size_t budget = 0;
  bool audit = false;
};

Json to_json(const Valuation& v);  // integer, or null when infinite
Json to_json(const Witness& w);
Json to_json(const SearchReport& r);
Json to_json(const InclusionCertificate& c);

Json verdict_report(const Verdict& v, const ReportContext& ctx);
Json table_report(const TableReport& report, const TableConfig& config);
Json normal_space_report(const MatrixGerm& F, const TangentSpaceResult& ns);
Json pullback_report(const TestCurve& curve, const PullbackSummary& summary);

std::string describe(const Verdict& v);
std::string describe(const TableReport& report);
std::string describe(const TangentSpaceResult& ns);
std::string describe(const TestCurve& curve, const PullbackSummary& summary);

}  // namespace lipeq
