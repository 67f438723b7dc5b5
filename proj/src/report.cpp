#include "lipeq/report.hpp"

#include <sstream>

namespace lipeq {

namespace {

Json strings(std::span<const Polynomial> ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string valuation_text(const Valuation& v) { return v.is_infinite() ? "inf" : std::to_string(v.value()); }

Json certificate(const Verdict& v) {
  Json c;
  switch (v.route) {
    case Route::Constant:
    case Route::Diagonal:
    case Route::Inclusion: {
      c["type"] = "inclusion";
      Json list = Json::array();
      bool replayed = true;
      for (const auto& inc : v.inclusions) {
        list.push_back(to_json(inc));
        replayed = replayed && inc.replay();
      }
      c["data"] = {{"inclusions", list}, {"replayed", replayed}};
      break;
    }
    case Route::CurveWitness: {
      c["type"] = "witness";
      Json data = to_json(*v.witness);
      if (v.replay)
        data["replay"] = {{"element_order", to_json(v.replay->element_order)},
                          {"ideal_order", to_json(v.replay->ideal_order)},
                          {"confirmed", v.replay->confirmed}};
      data["search"] = to_json(v.search);
      c["data"] = data;
      break;
    }
    case Route::Search:
      c["type"] = "search";
      c["data"] = to_json(v.search);
      break;
  }
  return c;
}

}  // namespace

Json to_json(const Valuation& v) { return v.is_infinite() ? Json(nullptr) : Json(v.value()); }

Json to_json(const Witness& w) {
  Json j;
  j["curve"] = w.curve.to_string();
  j["element"] = w.element.to_string();
  j["pullback"] = w.pullback.to_string();
  j["element_order"] = to_json(w.element_order);
  j["ideal_order"] = to_json(w.ideal_order);
  j["margin"] = w.margin ? Json(*w.margin) : Json(nullptr);
  return j;
}

Json to_json(const SearchReport& r) {
  return {{"curves_tried", r.curves_tried},
          {"budget", r.budget},
          {"stream_exhausted", r.stream_exhausted},
          {"min_gap", r.min_gap ? Json(*r.min_gap) : Json(nullptr)}};
}

Json to_json(const InclusionCertificate& c) {
  Json proofs = Json::array();
  for (const auto& p : c.proofs)
    proofs.push_back({{"element", p.element.to_string()},
                      {"cofactors", strings(p.cofactors)},
                      {"replayed", p.replayed}});
  return {{"source", c.source},
          {"target", c.target},
          {"target_generators", strings(c.target_generators)},
          {"proofs", proofs}};
}

Json verdict_report(const Verdict& v, const ReportContext& ctx) {
  Json j;
  j["germ"] = v.germ;
  Json params;
  params["source"] = ctx.germ_source;
  params["catalog"] = ctx.catalog ? Json(*ctx.catalog) : Json(nullptr);
  params["k"] = ctx.k;
  params["l"] = ctx.l;
  params["parameter"] = "t";
  params["max_exponent"] = ctx.max_exponent;
  params["budget"] = ctx.budget;
  params["audit"] = ctx.audit;
  j["parameters"] = params;
  Json coeffs = Json::object();
  for (const auto& [name, q] : ctx.theta_coefficients) coeffs[name] = to_string(q);
  j["theta_coefficients"] = coeffs;
  j["theta"] = v.theta;
  j["outcome"] = to_string(v.outcome);
  j["route"] = static_cast<int>(v.route);
  j["route_name"] = to_string(v.route);
  j["certificate"] = certificate(v);
  j["assumed_preconditions"] = v.assumed_preconditions;
  j["timings"] = {{"inclusion_ms", v.timings.inclusion_ms},
                  {"curves_ms", v.timings.curves_ms},
                  {"total_ms", v.timings.total_ms}};
  j["field"] = v.field;
  j["unfolding_generators"] = strings(v.unfolding_generators);
  j["direction_generators"] = strings(v.direction_generators);
  j["notes"] = v.notes;
  if (v.audit) {
    const AuditRecord& a = *v.audit;
    j["audit"] = {{"inclusion_certified", a.inclusion_certified},
                  {"inclusion_budget_exceeded", a.inclusion_budget_exceeded},
                  {"witness", a.witness ? to_json(*a.witness) : Json(nullptr)},
                  {"search", to_json(a.search)},
                  {"contradiction", a.contradiction}};
  }
  return j;
}

Json table_report(const TableReport& report, const TableConfig& config) {
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    Json coeffs = Json::object();
    for (const auto& [name, q] : c.coefficients) coeffs[name] = to_string(q);
    Json cell{{"row", c.row},
              {"k", c.k},
              {"l", c.l},
              {"direction", c.direction},
              {"theta_coefficients", coeffs},
              {"expected", to_string(c.expected)},
              {"outcome", to_string(c.verdict.outcome)},
              {"route", static_cast<int>(c.verdict.route)},
              {"route_name", to_string(c.verdict.route)},
              {"pass", c.pass},
              {"reason", c.reason},
              {"certificate", certificate(c.verdict)}};
    if (c.verdict.audit) cell["audit_contradiction"] = c.verdict.audit->contradiction;
    cells.push_back(std::move(cell));
  }
  return {{"config",
           {{"max_k", config.max_k},
            {"max_l", config.max_l},
            {"seed", config.seed},
            {"audit", config.audit},
            {"budget", config.budget},
            {"audit_budget", config.audit_budget}}},
          {"cells", cells},
          {"passed", report.passed()},
          {"total", report.cells.size()},
          {"all_pass", report.all_pass()},
          {"seconds", report.seconds}};
}

Json normal_space_report(const MatrixGerm& F, const TangentSpaceResult& ns) {
  Json basis = Json::array();
  for (const auto& e : ns.normal_basis) basis.push_back({{"name", e.name}, {"matrix", e.matrix.to_string()}});
  return {{"germ", F.to_string()},
          {"jet_degree", ns.jet_degree},
          {"jet_dimension", ns.jet_dimension},
          {"rank", ns.rank},
          {"codimension", ns.codimension},
          {"stable", ns.stable},
          {"basis", basis}};
}

Json pullback_report(const TestCurve& curve, const PullbackSummary& summary) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < summary.generators.size(); ++i)
    gens.push_back({{"generator", summary.generators[i].to_string()},
                    {"pullback", summary.pullbacks[i].to_string()},
                    {"order", to_json(summary.orders[i])}});
  return {{"curve", curve.to_string()}, {"generators", gens}, {"ideal_order", to_json(summary.ideal_order)}};
}

std::string describe(const Verdict& v) {
  std::ostringstream out;
  out << "germ:    " << v.germ << "\n";
  out << "theta:   " << v.theta << "\n";
  out << "verdict: " << to_string(v.outcome) << " (route " << static_cast<int>(v.route) << ", "
      << to_string(v.route) << ")\n";
  switch (v.route) {
    case Route::Constant:
      out << "theta is constant\n";
      break;
    case Route::Diagonal:
    case Route::Inclusion:
      for (const auto& inc : v.inclusions)
        out << "  " << inc.source << " in " << inc.target << ": " << inc.proofs.size()
            << " memberships, replay " << (inc.replay() ? "ok" : "FAILED") << "\n";
      break;
    case Route::CurveWitness:
      out << "  curve:   " << v.witness->curve.to_string() << "\n";
      out << "  element: " << v.witness->element.to_string() << "\n";
      out << "  pullback " << v.witness->pullback.to_string() << " has order "
          << valuation_text(v.witness->element_order) << " < ideal order "
          << valuation_text(v.witness->ideal_order) << "\n";
      if (v.replay) out << "  replay " << (v.replay->confirmed ? "confirmed" : "FAILED") << "\n";
      out << "  curves tried: " << v.search.curves_tried << "\n";
      break;
    case Route::Search:
      out << "  no witness among " << v.search.curves_tried << " curves"
          << (v.search.stream_exhausted ? " (stream exhausted)" : "") << "\n";
      break;
  }
  if (v.audit)
    out << "audit: inclusion " << (v.audit->inclusion_certified ? "certified" : "not certified")
        << ", witness " << (v.audit->witness ? "found" : "none") << ", "
        << (v.audit->contradiction ? "CONTRADICTION" : "consistent") << "\n";
  for (const auto& n : v.notes) out << "note: " << n << "\n";
  out << "field: " << v.field << "; assumes " << v.assumed_preconditions.front() << "\n";
  return out.str();
}

std::string describe(const TableReport& report) {
  std::ostringstream out;
  for (const auto& c : report.cells) {
    out << (c.pass ? "PASS " : "FAIL ") << "row " << c.row;
    if (c.row <= 4) out << " k=" << c.k;
    if (c.row == 1) out << " l=" << c.l;
    out << " " << c.direction << ": expected " << to_string(c.expected) << ", got "
        << to_string(c.verdict.outcome) << " via " << to_string(c.verdict.route);
    if (!c.pass) out << " (" << c.reason << ")";
    out << "\n";
  }
  out << report.passed() << "/" << report.cells.size() << " cells pass in " << report.seconds << " s\n";
  return out.str();
}

std::string describe(const TangentSpaceResult& ns) {
  std::ostringstream out;
  out << "codimension " << ns.codimension << " (jet degree " << ns.jet_degree
      << (ns.stable ? ", stable" : ", NOT stable") << ")\n";
  for (const auto& e : ns.normal_basis) out << "  " << e.name << " = " << e.matrix.to_string() << "\n";
  return out.str();
}

std::string describe(const TestCurve& curve, const PullbackSummary& summary) {
  std::ostringstream out;
  out << "curve: " << curve.to_string() << "\n";
  for (std::size_t i = 0; i < summary.generators.size(); ++i)
    out << "  " << summary.generators[i].to_string() << " -> " << summary.pullbacks[i].to_string()
        << "  order " << valuation_text(summary.orders[i]) << "\n";
  out << "ideal_order " << valuation_text(summary.ideal_order) << "\n";
  return out.str();
}

}  // namespace lipeq
