// lipeq: command-line front end for the Lipschitz triviality pipeline.
//
// Exit status: 0 ok, 1 usage or input error, 2 Inconclusive verdict,
// 3 budget exhausted, 4 reproduce-table found a failing cell.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lipeq/analyzer.hpp"
#include "lipeq/report.hpp"

using namespace lipeq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitBudget = 3;
constexpr int kExitTableFailure = 4;

constexpr std::uint64_t kRandomDirectionSeed = 20240917;

struct Args {
  int catalog = 0;
  int k = 0;
  int l = 0;
  std::string theta;
  std::string germ_file;
  std::string theta_file;
  std::string curve;
  int max_exponent = 0;
  std::size_t budget = 1'000'000;
  int jet_degree = 0;
  std::string json_path;
  std::string field = "complex";
  bool audit = false;
  bool random_direction = false;
  int ideal_catalog = 0;
  bool serial = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Matrix text with '#' comments removed and lines joined; an optional
// "vars: a, b, c" line names the source variables (default x, y).
struct GermText {
  std::vector<std::string> vars{"x", "y"};
  std::string matrix;
};

GermText parse_germ_text(const std::string& text) {
  GermText out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line.compare(first, 5, "vars:") == 0) {
      out.vars.clear();
      std::istringstream names(line.substr(first + 5));
      std::string name;
      while (std::getline(names, name, ',')) {
        name.erase(0, name.find_first_not_of(" \t\r"));
        name.erase(name.find_last_not_of(" \t\r") + 1);
        if (name.empty()) throw UsageError("empty variable name in vars line");
        out.vars.push_back(name);
      }
      continue;
    }
    out.matrix += line + " ";
  }
  if (out.matrix.empty()) throw UsageError("germ file has no matrix");
  return out;
}

struct Input {
  std::optional<NormalForm> nf;
  MatrixGerm F;
  MatrixGerm theta;
  Coefficients coefficients;
  std::string source;
};

std::optional<NormalForm> catalog_form(int id, int k, int l) {
  if (id == 0) return std::nullopt;
  if (id < 1 || id > 6) throw UsageError("--catalog must be in 1..6");
  try {
    return NormalForm::catalog(id, k, l);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Coefficients random_coefficients(const NormalForm& nf) {
  std::mt19937_64 engine(kRandomDirectionSeed);
  Coefficients c;
  for (const auto& d : nf.directions()) c[d.name] = portable_random_rational(engine);
  return c;
}

// Germ from --catalog or --germ-file; direction from --theta,
// --random-direction or --theta-file (zero when none is given).
Input load_input(const Args& a, int catalog, bool need_theta) {
  if ((catalog != 0) == !a.germ_file.empty())
    throw UsageError("give exactly one of --catalog and --germ-file");
  auto nf = catalog_form(catalog, a.k, a.l);
  std::optional<MatrixGerm> F;
  std::string source = "catalog";
  if (nf) {
    F = nf->matrix();
  } else {
    const GermText gt = parse_germ_text(read_file(a.germ_file));
    F = MatrixGerm::parse(gt.matrix, RingContext::make(gt.vars));
    source = a.germ_file;
  }
  const int theta_sources = !a.theta.empty() + a.random_direction + !a.theta_file.empty();
  if (theta_sources > 1) throw UsageError("give at most one of --theta, --random-direction, --theta-file");
  if (!need_theta && theta_sources > 0) throw UsageError("this command takes no direction");

  Coefficients coeffs;
  std::optional<MatrixGerm> theta;
  if (!a.theta.empty() || a.random_direction) {
    if (!nf) throw UsageError("--theta and --random-direction need --catalog; use --theta-file");
    coeffs = a.random_direction ? random_coefficients(*nf) : parse_coefficients(a.theta);
    theta = theta_from_coefficients(*nf, coeffs);
  } else if (!a.theta_file.empty()) {
    const GermText gt = parse_germ_text(read_file(a.theta_file));
    theta = MatrixGerm::parse(gt.matrix, F->ring());
  } else {
    theta = MatrixGerm::zero(F->ring(), F->rows(), F->cols(), F->symmetric());
  }
  return {std::move(nf), std::move(*F), std::move(*theta), std::move(coeffs), source};
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Execution execution(const Args& a) { return a.serial ? Execution::Serial : Execution::Parallel; }

int run_analyze(const Args& a) {
  const Input in = load_input(a, a.catalog, true);
  AnalyzeOptions opts;
  opts.curves.max_exponent = a.max_exponent > 0 ? a.max_exponent
                             : in.nf           ? in.nf->default_max_exponent()
                                               : 0;
  opts.budget = a.budget;
  opts.audit = a.audit;
  opts.field = a.field;
  opts.execution = execution(a);
  const Verdict v = analyze(in.F, in.theta, opts);
  if (in.nf) std::cout << "normal form: " << in.nf->name() << "\n";
  if (!in.coefficients.empty()) std::cout << "coefficients: " << coefficients_to_string(in.coefficients) << "\n";
  std::cout << describe(v);

  ReportContext ctx;
  if (in.nf) ctx.catalog = a.catalog;
  ctx.k = a.k;
  ctx.l = a.l;
  ctx.germ_source = in.source;
  ctx.theta_coefficients = in.coefficients;
  ctx.max_exponent = opts.curves.max_exponent > 0 ? opts.curves.max_exponent : 2 * in.F.max_degree() + 2;
  ctx.budget = opts.budget;
  ctx.audit = opts.audit;
  write_json(a.json_path, verdict_report(v, ctx));
  if (v.audit && v.audit->contradiction) {
    std::cerr << "error: audit found a witness against a certified inclusion\n";
    return kExitUsage;
  }
  return v.outcome == Outcome::Inconclusive ? kExitInconclusive : kExitOk;
}

int run_normal_space(const Args& a) {
  const Input in = load_input(a, a.catalog, false);
  const GroupAction action = in.F.symmetric() ? GroupAction::SymmetricCongruence : GroupAction::General;
  const TangentSpaceResult ns = normal_space_basis(in.F, action, a.jet_degree);
  if (in.nf) std::cout << "normal form: " << in.nf->name() << "\n";
  std::cout << "germ: " << in.F.to_string() << "\n" << describe(ns);
  Json j = normal_space_report(in.F, ns);
  if (in.nf) {
    const auto checks = check_directions(*in.nf, ns);
    std::cout << "named directions:\n";
    Json dirs = Json::array();
    for (const auto& c : checks) {
      std::cout << "  " << c.name << " = " << c.element << (c.in_computed_basis ? "" : "  (not a computed representative)")
                << "\n";
      dirs.push_back({{"name", c.name}, {"element", c.element}, {"in_computed_basis", c.in_computed_basis}});
    }
    const bool match = matches_displayed_basis(*in.nf, ns);
    std::cout << "displayed list " << (match ? "matches" : "differs") << "\n";
    j["directions"] = dirs;
    j["displayed_basis"] = in.nf->displayed_basis();
    j["matches_displayed"] = match;
  }
  write_json(a.json_path, j);
  return kExitOk;
}

// I_D(F~) of the catalog germ (or germ file) and its direction; the curve is
// read in the doubled ring (t, x.., t', x'..). Catalog rows default to their
// displayed curve.
int run_pullback(const Args& a) {
  const int catalog = a.ideal_catalog != 0 ? a.ideal_catalog : a.catalog;
  const Input in = load_input(a, catalog, true);
  std::string curve_text = a.curve;
  if (curve_text.empty() && in.nf) curve_text = in.nf->displayed_curve();
  if (curve_text.empty()) throw UsageError("pullback needs --curve");
  const Unfolding U = build_unfolding(in.F, in.theta);
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal Itheta = direction_ideal(U);
  const TestCurve curve = TestCurve::parse(curve_text, IF.ideal.ring());
  const PullbackSummary ideal_side = pullback_ideal(curve, IF.ideal);
  const PullbackSummary theta_side = pullback_ideal(curve, Itheta.ideal);
  std::cout << "I_D(F~):\n" << describe(curve, ideal_side);
  std::cout << "I_D(theta):\n" << describe(curve, theta_side);
  const bool witness = theta_side.ideal_order < ideal_side.ideal_order;
  std::cout << (witness ? "curve is a witness: I_D(theta) is not in the closure\n"
                        : "curve gives no obstruction\n");
  write_json(a.json_path, {{"unfolding_ideal", pullback_report(curve, ideal_side)},
                           {"direction_ideal", pullback_report(curve, theta_side)},
                           {"witness", witness}});
  return kExitOk;
}

int run_double(const Args& a) {
  const Input in = load_input(a, a.catalog, true);
  const Unfolding U = build_unfolding(in.F, in.theta);
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal Itheta = direction_ideal(U);
  auto show = [](const char* title, std::span<const Polynomial> gens) {
    std::cout << title << "\n";
    for (const auto& g : gens) std::cout << "  " << g.to_string() << "\n";
  };
  std::cout << "F~ = " << U.total.to_string() << "\n";
  show("I_D(F~):", IF.ideal.generators());
  show("I_D(theta):", Itheta.ideal.generators());
  const auto view = paper_view(IF.ideal.generators());
  show("I_D(F~) with t' = t:", view);
  Json j{{"unfolding", U.total.to_string()}, {"unfolding_ideal", Json::array()}, {"direction_ideal", Json::array()},
         {"unfolding_ideal_same_parameter", Json::array()}};
  for (const auto& g : IF.ideal.generators()) j["unfolding_ideal"].push_back(g.to_string());
  for (const auto& g : Itheta.ideal.generators()) j["direction_ideal"].push_back(g.to_string());
  for (const auto& g : view) j["unfolding_ideal_same_parameter"].push_back(g.to_string());
  write_json(a.json_path, j);
  return kExitOk;
}

int run_check_inclusion(const Args& a) {
  const Input in = load_input(a, a.catalog, true);
  const Unfolding U = build_unfolding(in.F, in.theta);
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal Itheta = direction_ideal(U);
  GroebnerOptions g;
  g.max_pairs = std::min<std::size_t>(a.budget, g.max_pairs);
  Json proofs = Json::array();
  bool all = true;
  for (const auto& h : Itheta.ideal.generators()) {
    const auto cof = membership_cofactors(h, IF.ideal, g);
    std::cout << h.to_string() << ": ";
    if (!cof) {
      all = false;
      std::cout << "not a member\n";
      proofs.push_back({{"element", h.to_string()}, {"member", false}});
      continue;
    }
    const bool replayed = replay_cofactors(h, IF.ideal.generators(), *cof);
    std::cout << "member, cofactors replay " << (replayed ? "ok" : "FAILED") << "\n";
    Json cj = Json::array();
    for (const auto& c : *cof) {
      cj.push_back(c.to_string());
      if (!c.is_zero()) std::cout << "    " << c.to_string() << "\n";
    }
    proofs.push_back({{"element", h.to_string()}, {"member", true}, {"cofactors", cj}, {"replayed", replayed}});
  }
  std::cout << "I_D(theta) " << (all ? "is" : "is not") << " contained in I_D(F~)\n";
  Json gens = Json::array();
  for (const auto& p : IF.ideal.generators()) gens.push_back(p.to_string());
  write_json(a.json_path, {{"contained", all}, {"target_generators", gens}, {"proofs", proofs}});
  return kExitOk;
}

int run_table(const Args& a) {
  TableConfig cfg;
  if (a.k > 0) cfg.max_k = a.k;
  if (a.l > 0) cfg.max_l = a.l;
  cfg.budget = a.budget;
  cfg.audit = true;
  const TableReport report = reproduce_paper_table(cfg, execution(a));
  std::cout << describe(report);
  write_json(a.json_path, table_report(report, cfg));
  return report.all_pass() ? kExitOk : kExitTableFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz triviality of one-parameter deformations of matrix germs"};
  app.require_subcommand(1);
  Args a;

  auto germ_flags = [&](CLI::App* sub) {
    sub->add_option("--catalog", a.catalog, "catalog row 1..6 (simple symmetric 2x2 germs)");
    sub->add_option("--k", a.k, "first catalog parameter");
    sub->add_option("--l", a.l, "second catalog parameter (row 1)");
    sub->add_option("--germ-file", a.germ_file, "matrix germ file ('sym: ...' or 'gen: ...')")->check(CLI::ExistingFile);
    sub->add_option("--json", a.json_path, "write a JSON report to this path");
  };
  auto theta_flags = [&](CLI::App* sub) {
    sub->add_option("--theta", a.theta, "named direction coefficients, e.g. \"a1=1,b=-3/4\"");
    sub->add_option("--theta-file", a.theta_file, "direction matrix file")->check(CLI::ExistingFile);
    sub->add_flag("--random-direction", a.random_direction, "seeded random combination of the named directions");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "verdict for F + t*theta");
  germ_flags(analyze_cmd);
  theta_flags(analyze_cmd);
  analyze_cmd->add_option("--max-exponent", a.max_exponent, "largest curve exponent (0: automatic)");
  analyze_cmd->add_option("--budget", a.budget, "number of test curves to try");
  analyze_cmd->add_option("--field", a.field, "ground field label")->check(CLI::IsMember({"real", "complex"}));
  analyze_cmd->add_flag("--audit", a.audit, "run the inclusion and the curve search both");
  analyze_cmd->add_flag("--serial", a.serial, "single-threaded curve search");

  auto* normal_cmd = app.add_subcommand("normal-space", "monomial basis of the normal space");
  germ_flags(normal_cmd);
  normal_cmd->add_option("--jet-degree", a.jet_degree, "truncation degree (0: automatic)");

  auto* pullback_cmd = app.add_subcommand("pullback", "pull I_D(F~) and I_D(theta) back along a curve");
  germ_flags(pullback_cmd);
  theta_flags(pullback_cmd);
  pullback_cmd->add_option("--curve", a.curve, "components in (t, x.., t', x'..) order, e.g. \"s, 2s^2, ...\"");
  pullback_cmd->add_option("--ideal-from-catalog", a.ideal_catalog, "same as --catalog");

  auto* double_cmd = app.add_subcommand("double", "print the doubled ideals");
  germ_flags(double_cmd);
  theta_flags(double_cmd);

  auto* table_cmd = app.add_subcommand("reproduce-table", "run every catalog cell against its expected verdict");
  table_cmd->add_option("--k", a.k, "largest k (default 4)");
  table_cmd->add_option("--l", a.l, "largest l (default 4)");
  table_cmd->add_option("--budget", a.budget, "curves per cell");
  table_cmd->add_option("--json", a.json_path, "write a JSON report to this path");
  table_cmd->add_flag("--serial", a.serial, "run cells one at a time");

  auto* inclusion_cmd = app.add_subcommand("check-inclusion", "is I_D(theta) contained in I_D(F~)?");
  germ_flags(inclusion_cmd);
  theta_flags(inclusion_cmd);
  inclusion_cmd->add_option("--budget", a.budget, "Buchberger pair budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return run_analyze(a);
    if (*normal_cmd) return run_normal_space(a);
    if (*pullback_cmd) return run_pullback(a);
    if (*double_cmd) return run_double(a);
    if (*table_cmd) return run_table(a);
    if (*inclusion_cmd) return run_check_inclusion(a);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
