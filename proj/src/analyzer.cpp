#include "lipeq/analyzer.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <tuple>

namespace lipeq {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string power(const char* v, int e) {
  if (e == 0) return "1";
  if (e == 1) return v;
  return std::string(v) + "^" + std::to_string(e);
}

std::string unit_name(const std::string& monomial, Position p) {
  std::string unit = "E" + std::to_string(p.first + 1) + std::to_string(p.second + 1);
  return monomial == "1" ? unit : monomial + "*" + unit;
}

RingPtr source_ring() { return RingContext::make({"x", "y"}); }

constexpr Position kE11{0, 0};
constexpr Position kE22{1, 1};
constexpr Position kE12{0, 1};

InclusionCertificate prove_inclusion(std::string source, std::span<const Polynomial> elements,
                                     std::string target, const Ideal& ideal,
                                     const GroebnerOptions& opts, bool& ok) {
  InclusionCertificate cert{std::move(source), std::move(target),
                            {ideal.generators().begin(), ideal.generators().end()}, {}};
  ok = true;
  for (const auto& g : elements) {
    auto cof = membership_cofactors(g, ideal, opts);
    if (!cof) {
      ok = false;
      return cert;
    }
    MembershipProof p{g, std::move(*cof), false};
    p.replayed = replay_cofactors(g, ideal.generators(), p.cofactors);
    cert.proofs.push_back(std::move(p));
  }
  return cert;
}

// theta is a combination of computed normal-space representatives
bool in_normal_span(const TangentSpaceResult& ns, const MatrixGerm& theta) {
  for (const auto& e : theta.entries())
    if (e.total_degree() > ns.jet_degree) return false;
  std::set<std::size_t> normal;
  for (const auto& e : ns.normal_basis) normal.insert(e.column);
  for (const auto& [col, v] : ns.jets->coordinates(theta))
    if (!normal.count(col)) return false;
  return true;
}

}  // namespace

NormalForm::NormalForm(int id, int k, int l, MatrixGerm matrix)
    : id_(id), k_(k), l_(l), matrix_(std::move(matrix)) {}

NormalForm NormalForm::catalog(int id, int k, int l) {
  const RingPtr ring = source_ring();
  auto germ = [&](const std::string& text) { return MatrixGerm::parse(text, ring); };
  auto dir = [](std::vector<ThetaDirection>& out, std::string name, std::string mono, Position p) {
    out.push_back({std::move(name), std::move(mono), p});
  };

  switch (id) {
    case 1: {
      if (k < 1 || l < 2) throw Error("row 1 needs k >= 1 and l >= 2");
      NormalForm nf(1, k, l, germ("sym: " + power("y", k) + ", x ; x, " + power("y", l)));
      nf.table_label_ = "A_" + std::to_string(k + l + 1);
      nf.lemma_label_ = "A_" + std::to_string(k + l - 1);
      nf.milnor_ = k + l - 1;
      for (int i = 0; i <= k - 1; ++i) dir(nf.directions_, "a" + std::to_string(i), power("y", i), kE11);
      for (int j = 0; j <= l - 2; ++j) dir(nf.directions_, "b" + std::to_string(j), power("y", j), kE22);
      nf.displayed_basis_ = {"E11", "E22"};
      for (int i = 1; i <= k - 1; ++i) nf.displayed_basis_.push_back(unit_name(power("y", i), kE11));
      for (int j = 1; j <= l - 2; ++j) nf.displayed_basis_.push_back(unit_name(power("y", j), kE22));
      const int r = std::min(k, l);
      for (int i = 1; i < r && i <= k - 1; ++i) nf.obstructing_.push_back("a" + std::to_string(i));
      for (int j = 1; j < r && j <= l - 2; ++j) nf.obstructing_.push_back("b" + std::to_string(j));
      nf.necessity_only_ = k != l;
      const std::string p = power("s", k + l);
      nf.curve_ = p + ", 2" + p + ", 2s, " + p + ", " + p + ", s";
      nf.curve_order_ = r;
      return nf;
    }
    case 2: {
      if (k < 2) throw Error("row 2 needs k >= 2");
      NormalForm nf(2, k, 0, germ("sym: x, 0 ; 0, y^2 + " + power("x", k)));
      nf.table_label_ = nf.lemma_label_ = "D_" + std::to_string(k + 2);
      nf.milnor_ = k + 2;
      dir(nf.directions_, "a", "1", kE11);
      dir(nf.directions_, "b", "1", kE12);
      dir(nf.directions_, "c", "y", kE12);
      for (int i = 0; i <= k - 2; ++i) dir(nf.directions_, "d" + std::to_string(i), power("x", i), kE22);
      nf.displayed_basis_ = {"E11", "E12", "y*E12", "E22"};
      for (int i = 1; i <= k - 2; ++i) nf.displayed_basis_.push_back(unit_name(power("x", i), kE22));
      nf.obstructing_ = {"c"};
      nf.curve_ = "s, 2s^2, 2s, s, s^2, s";
      nf.curve_order_ = 2;
      return nf;
    }
    case 3: {
      if (k < 2) throw Error("row 3 needs k >= 2");
      NormalForm nf(3, k, 0, germ("sym: x, 0 ; 0, x*y + " + power("y", k)));
      nf.table_label_ = nf.lemma_label_ = "D_" + std::to_string(2 * k);
      nf.milnor_ = 2 * k;
      dir(nf.directions_, "a", "1", kE12);
      for (int i = 0; i <= k - 2; ++i) dir(nf.directions_, "a" + std::to_string(i), power("y", i), kE11);
      for (int j = 0; j <= k - 1; ++j) dir(nf.directions_, "b" + std::to_string(j), power("y", j), kE22);
      nf.displayed_basis_ = {"E11", "E22", "E12"};
      for (int i = 1; i <= k - 2; ++i) nf.displayed_basis_.push_back(unit_name(power("y", i), kE11));
      for (int j = 1; j <= k - 1; ++j) nf.displayed_basis_.push_back(unit_name(power("y", j), kE22));
      for (int i = 1; i <= k - 2; ++i) nf.obstructing_.push_back("a" + std::to_string(i));
      for (int j = 1; j <= k - 1; ++j) nf.obstructing_.push_back("b" + std::to_string(j));
      const std::string p = power("s", k);
      nf.curve_ = p + ", 2" + p + ", 2s, " + p + ", " + p + ", s";
      nf.curve_order_ = k;
      return nf;
    }
    case 4: {
      if (k < 2) throw Error("row 4 needs k >= 2");
      const std::string yk = power("y", k);
      NormalForm nf(4, k, 0, germ("sym: x, " + yk + " ; " + yk + ", x*y"));
      nf.table_label_ = nf.lemma_label_ = "D_" + std::to_string(2 * k + 1);
      nf.milnor_ = 2 * k + 1;
      dir(nf.directions_, "a", "1", kE11);
      for (int i = 1; i <= k - 1; ++i) dir(nf.directions_, "a" + std::to_string(i), power("y", i), kE11);
      dir(nf.directions_, "b", "1", kE12);
      for (int j = 0; j <= k - 1; ++j) dir(nf.directions_, "b" + std::to_string(j), power("x", j), kE22);
      nf.displayed_basis_ = {"E11", "E12", "E22"};
      for (int i = 1; i <= k - 1; ++i) nf.displayed_basis_.push_back(unit_name(power("y", i), kE11));
      for (int j = 1; j <= k - 1; ++j) nf.displayed_basis_.push_back(unit_name(power("x", j), kE22));
      for (int i = 1; i <= k - 1; ++i) nf.obstructing_.push_back("a" + std::to_string(i));
      const std::string p = power("s", k);
      nf.curve_ = p + ", 2" + p + ", 2s, " + p + ", " + p + ", s";
      nf.curve_order_ = k;
      return nf;
    }
    case 5: {
      NormalForm nf(5, 0, 0, germ("sym: x, y^2 ; y^2, x^2"));
      nf.table_label_ = nf.lemma_label_ = "E_6";
      nf.milnor_ = 6;
      dir(nf.directions_, "a1", "1", kE11);
      dir(nf.directions_, "a2", "1", kE22);
      dir(nf.directions_, "a3", "y", kE11);
      dir(nf.directions_, "a4", "y^2", kE11);
      dir(nf.directions_, "a5", "y", kE22);
      dir(nf.directions_, "a6", "y^2", kE22);
      // the constant off-diagonal class has no name in the lemma's theta
      dir(nf.directions_, "b", "1", kE12);
      nf.displayed_basis_ = {"E11", "E22", "E12", "y*E11", "y*E22", "y^2*E22"};
      nf.obstructing_ = {"a3", "a5"};
      nf.curve_ = "s, 2s^3, 2s^2, s, s^3, s^2";
      nf.curve_order_ = 3;
      return nf;
    }
    case 6: {
      NormalForm nf(6, 0, 0, germ("sym: x, 0 ; 0, x^2 + y^3"));
      nf.table_label_ = nf.lemma_label_ = "E_7";
      nf.milnor_ = 7;
      dir(nf.directions_, "a1", "1", kE11);
      dir(nf.directions_, "a2", "1", kE22);
      dir(nf.directions_, "a3", "1", kE12);
      dir(nf.directions_, "a4", "y", kE22);
      dir(nf.directions_, "a5", "y", kE11);
      dir(nf.directions_, "a6", "y", kE12);
      dir(nf.directions_, "a7", "y^2", kE12);
      nf.displayed_basis_ = {"E11", "E22", "E12", "y*E22", "y*E11", "y*E12", "y^2*E12"};
      nf.obstructing_ = {"a4", "a5", "a6", "a7"};
      nf.curve_ = "s^2, 2s^3, 2s, s^2, s^3, s";
      nf.curve_order_ = 3;
      return nf;
    }
    default:
      throw Error("catalog rows are numbered 1..6, got " + std::to_string(id));
  }
}

std::string NormalForm::name() const {
  std::string out = "row " + std::to_string(id_);
  if (id_ == 1) out += " (k=" + std::to_string(k_) + ", l=" + std::to_string(l_) + ")";
  if (id_ >= 2 && id_ <= 4) out += " (k=" + std::to_string(k_) + ")";
  return out;
}

int NormalForm::default_max_exponent() const {
  if (id_ == 1) return k_ + l_ + 2;
  if (id_ <= 4) return 2 * k_ + 2;
  return 8;
}

Expectation NormalForm::expected(const Coefficients& coeffs) const {
  auto nonzero = [&](const std::string& n) {
    auto it = coeffs.find(n);
    return it != coeffs.end() && it->second != 0;
  };
  for (const auto& n : obstructing_)
    if (nonzero(n)) return Expectation::NotLipschitz;
  if (!necessity_only_) return Expectation::Lipschitz;
  for (const auto& d : directions_)
    if (d.monomial != "1" && nonzero(d.name)) return Expectation::Unconstrained;
  return Expectation::Lipschitz;
}

MatrixGerm theta_from_coefficients(const NormalForm& nf, const Coefficients& coeffs) {
  for (const auto& [name, v] : coeffs) {
    const bool known = std::any_of(nf.directions().begin(), nf.directions().end(),
                                   [&](const ThetaDirection& d) { return d.name == name; });
    if (!known) throw Error("coefficient '" + name + "' is not a direction of " + nf.name());
  }
  const RingPtr& ring = nf.ring();
  MatrixGerm theta = MatrixGerm::zero(ring, 2, 2, true);
  for (const auto& d : nf.directions()) {
    auto it = coeffs.find(d.name);
    if (it == coeffs.end() || it->second == 0) continue;
    const Polynomial m = Polynomial::parse(d.monomial, ring).scaled(it->second);
    theta = theta + MatrixGerm::unit(ring, 2, 2, true, d.position, m);
  }
  return theta;
}

std::vector<DirectionCheck> check_directions(const NormalForm& nf, const TangentSpaceResult& ns) {
  const auto names = ns.names();
  std::vector<DirectionCheck> out;
  for (const auto& d : nf.directions()) {
    const MatrixGerm m = MatrixGerm::unit(nf.ring(), 2, 2, true, d.position,
                                          Polynomial::parse(d.monomial, nf.ring()));
    const std::string el = unit_name(d.monomial, d.position);
    out.push_back({d.name, el, std::find(names.begin(), names.end(), el) != names.end(),
                   ns.normal_coordinates(m)});
  }
  return out;
}

bool matches_displayed_basis(const NormalForm& nf, const TangentSpaceResult& ns) {
  const auto computed = ns.names();
  const std::set<std::string> a(computed.begin(), computed.end());
  const std::set<std::string> b(nf.displayed_basis().begin(), nf.displayed_basis().end());
  return a == b && computed.size() == nf.displayed_basis().size();
}

Coefficients parse_coefficients(std::string_view text) {
  Coefficients out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = text.find(',', start);
    const std::string_view item = trim(text.substr(start, p == std::string_view::npos ? p : p - start));
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected name=value in '" + std::string(item) + "'");
    const std::string name(trim(item.substr(0, eq)));
    if (name.empty()) throw ParseError("empty coefficient name in '" + std::string(item) + "'");
    if (out.count(name)) throw ParseError("coefficient '" + name + "' given twice");
    out[name] = parse_rational(trim(item.substr(eq + 1)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string coefficients_to_string(const Coefficients& coeffs) {
  std::string out;
  for (const auto& [n, v] : coeffs) {
    if (!out.empty()) out += ", ";
    out += n + "=" + to_string(v);
  }
  return out;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Lipschitz: return "Lipschitz";
    case Outcome::NotLipschitz: return "NotLipschitz";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::Constant: return "constant";
    case Route::Diagonal: return "diagonal";
    case Route::Inclusion: return "inclusion";
    case Route::CurveWitness: return "witness";
    case Route::Search: return "search";
  }
  return "?";
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Lipschitz: return "Lipschitz";
    case Expectation::NotLipschitz: return "NotLipschitz";
    case Expectation::Unconstrained: return "unconstrained";
  }
  return "?";
}

bool InclusionCertificate::replay() const {
  return std::all_of(proofs.begin(), proofs.end(), [&](const MembershipProof& p) {
    return replay_cofactors(p.element, target_generators, p.cofactors);
  });
}

Verdict analyze(const MatrixGerm& F, const MatrixGerm& theta, const AnalyzeOptions& options) {
  const auto t_start = Clock::now();
  Verdict v;
  v.field = options.field;
  v.germ = F.to_string();
  v.theta = theta.to_string();

  const Unfolding U = build_unfolding(F, theta);
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal Itheta = direction_ideal(U);
  const auto& dir_gens = Itheta.ideal.generators();
  v.unfolding_generators.assign(IF.ideal.generators().begin(), IF.ideal.generators().end());
  v.direction_generators.assign(dir_gens.begin(), dir_gens.end());

  CurveSearchConfig curves = options.curves;
  if (curves.max_exponent <= 0) curves.max_exponent = 2 * F.max_degree() + 2;

  bool certified = false;
  auto t_inc = Clock::now();

  if (theta.is_constant()) {
    certified = true;
    v.outcome = Outcome::Lipschitz;
    v.route = Route::Constant;
    v.inclusions.push_back({"I_D(theta) = 0", "I_D(F~)", v.unfolding_generators, {}});
  }

  if (!certified && is_reduced_point_minors(F)) {
    try {
      const GroupAction action =
          F.symmetric() ? GroupAction::SymmetricCongruence : GroupAction::General;
      const TangentSpaceResult ns = normal_space_basis(F, action);
      if (in_normal_span(ns, theta)) {
        const Ideal diag = diagonal_ideal(IF.ideal.ring());
        bool ok1 = false;
        bool ok2 = false;
        InclusionCertificate c1 =
            prove_inclusion("I_D(theta)", dir_gens, "I_Delta", diag, options.groebner, ok1);
        InclusionCertificate c2 = prove_inclusion("I_Delta", diag.generators(), "I_D(F~)",
                                                  IF.ideal, options.groebner, ok2);
        if (ok1 && ok2) {
          certified = true;
          v.outcome = Outcome::Lipschitz;
          v.route = Route::Diagonal;
          v.inclusions.push_back(std::move(c1));
          v.inclusions.push_back(std::move(c2));
        } else {
          v.notes.push_back("diagonal route: I_Delta is not contained in I_D(F~)");
        }
      } else {
        v.notes.push_back("diagonal route skipped: theta is not a normal-space combination");
      }
    } catch (const BudgetExceeded& e) {
      v.notes.push_back(std::string("diagonal route: ") + e.what());
    }
  }

  bool inclusion_ok = false;
  bool inclusion_budget = false;
  std::optional<InclusionCertificate> inclusion;
  if (!certified || options.audit) {
    try {
      bool ok = false;
      InclusionCertificate c =
          prove_inclusion("I_D(dF~/dt)", dir_gens, "I_D(F~)", IF.ideal, options.groebner, ok);
      if (ok) {
        inclusion_ok = true;
        inclusion = std::move(c);
      }
    } catch (const BudgetExceeded& e) {
      inclusion_budget = true;
      v.notes.push_back(std::string("inclusion route: ") + e.what());
    }
    if (!certified && inclusion_ok) {
      certified = true;
      v.outcome = Outcome::Lipschitz;
      v.route = Route::Inclusion;
      v.inclusions.push_back(*inclusion);
    }
  }
  v.timings.inclusion_ms = ms_since(t_inc);

  const auto t_curves = Clock::now();
  if (!certified) {
    ClosureResult cr = closure_test(dir_gens, IF.ideal, curves, options.budget, options.execution);
    v.search = cr.report;
    if (cr.witness) {
      v.outcome = Outcome::NotLipschitz;
      v.route = Route::CurveWitness;
      v.replay = replay_witness(*cr.witness, IF.ideal);
      v.witness = std::move(cr.witness);
    } else {
      v.outcome = Outcome::Inconclusive;
      v.route = Route::Search;
    }
  }
  if (options.audit) {
    AuditRecord audit;
    audit.inclusion_certified = inclusion_ok;
    audit.inclusion_budget_exceeded = inclusion_budget;
    if (certified) {
      ClosureResult cr =
          closure_test(dir_gens, IF.ideal, curves, options.audit_budget, options.execution);
      audit.witness = std::move(cr.witness);
      audit.search = cr.report;
    } else {
      audit.witness = v.witness;
      audit.search = v.search;
    }
    audit.contradiction = (certified || inclusion_ok) && audit.witness.has_value();
    v.audit = std::move(audit);
  }
  v.timings.curves_ms = ms_since(t_curves);
  v.timings.total_ms = ms_since(t_start);
  return v;
}

std::size_t TableReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const TableCell& c) { return c.pass; }));
}

bool TableReport::all_pass() const { return passed() == cells.size(); }

Rational portable_random_rational(std::mt19937_64& engine) {
  const std::uint64_t bits = engine();
  const long n = static_cast<long>(bits % 18);
  const long num = n < 9 ? n - 9 : n - 8;
  const long den = static_cast<long>((bits >> 32) % 5) + 1;
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

std::vector<TableCell> table_cells(const TableConfig& config) {
  std::vector<std::tuple<int, int, int>> germs;
  for (int k = 1; k <= config.max_k; ++k)
    for (int l = 2; l <= config.max_l; ++l) germs.emplace_back(1, k, l);
  for (int row = 2; row <= 4; ++row)
    for (int k = 2; k <= config.max_k; ++k) germs.emplace_back(row, k, 0);
  germs.emplace_back(5, 0, 0);
  germs.emplace_back(6, 0, 0);

  std::vector<TableCell> cells;
  for (const auto& [row, k, l] : germs) {
    const NormalForm nf = NormalForm::catalog(row, k, l);
    auto add = [&](std::string label, Coefficients c) {
      const Expectation e = nf.expected(c);
      cells.push_back(TableCell{row, k, l, std::move(label), std::move(c), e, Verdict{}, false, ""});
    };
    for (const auto& d : nf.directions()) add(d.name, {{d.name, Rational(1)}});
    std::mt19937_64 engine(config.seed ^ (static_cast<std::uint64_t>(row) << 40) ^
                           (static_cast<std::uint64_t>(k) << 20) ^ static_cast<std::uint64_t>(l));
    Coefficients random;
    for (const auto& d : nf.directions()) random[d.name] = portable_random_rational(engine);
    add("random", std::move(random));
    add("zero", {});
  }
  return cells;
}

void run_cell(TableCell& cell, const TableConfig& config, Execution inner) {
  const NormalForm nf = NormalForm::catalog(cell.row, cell.k, cell.l);
  const MatrixGerm theta = theta_from_coefficients(nf, cell.coefficients);
  AnalyzeOptions opts;
  opts.curves.max_exponent = nf.default_max_exponent();
  opts.budget = config.budget;
  opts.audit = config.audit;
  opts.audit_budget = config.audit_budget;
  opts.execution = inner;
  cell.verdict = analyze(nf.matrix(), theta, opts);
  const Verdict& v = cell.verdict;

  if (v.audit && v.audit->contradiction) {
    cell.pass = false;
    cell.reason = "audit: inclusion certified but a witness exists";
    return;
  }
  if (v.outcome == Outcome::NotLipschitz && !(v.replay && v.replay->confirmed)) {
    cell.pass = false;
    cell.reason = "witness failed to replay";
    return;
  }
  if (v.outcome == Outcome::Lipschitz) {
    for (const auto& c : v.inclusions)
      if (!c.replay()) {
        cell.pass = false;
        cell.reason = "inclusion certificate failed to replay";
        return;
      }
  }
  switch (cell.expected) {
    case Expectation::Lipschitz:
      cell.pass = v.outcome == Outcome::Lipschitz;
      break;
    case Expectation::NotLipschitz:
      cell.pass = v.outcome == Outcome::NotLipschitz;
      break;
    case Expectation::Unconstrained:
      cell.pass = true;
      break;
  }
  cell.reason = cell.pass ? "ok" : "expected " + to_string(cell.expected) + ", got " + to_string(v.outcome);
}

TableReport reproduce_paper_table(const TableConfig& config, Execution mode) {
  const auto t0 = Clock::now();
  TableReport report;
  report.cells = table_cells(config);
  const long n = static_cast<long>(report.cells.size());
  if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) run_cell(report.cells[static_cast<std::size_t>(i)], config, Execution::Serial);
  } else {
    for (long i = 0; i < n; ++i) run_cell(report.cells[static_cast<std::size_t>(i)], config, Execution::Serial);
  }
  report.seconds = ms_since(t0) / 1000.0;
  return report;
}

}  // namespace lipeq
