#pragma once

// Verdict pipeline for one-parameter deformations F + t*theta and the
// symmetric 2x2 catalog harness.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lipeq/curve.hpp"
#include "lipeq/double.hpp"
#include "lipeq/groebner.hpp"
#include "lipeq/tangent.hpp"

namespace lipeq {

using Coefficients = std::map<std::string, Rational>;

// A named deformation direction: monomial * unit matrix at a position.
struct ThetaDirection {
  std::string name;
  std::string monomial;  // in the (x, y) grammar, "1" for constants
  Position position;
};

enum class Expectation { Lipschitz, NotLipschitz, Unconstrained };

class NormalForm {
 public:
  // Rows 1..6 of the simple symmetric 2x2 table. Row 1 needs k >= 1 and
  // l >= 2, rows 2..4 need k >= 2; rows 5 and 6 take no parameters.
  static NormalForm catalog(int id, int k = 0, int l = 0);

  int id() const { return id_; }
  int k() const { return k_; }
  int l() const { return l_; }
  const MatrixGerm& matrix() const { return matrix_; }
  const RingPtr& ring() const { return matrix_.ring(); }
  std::string name() const;

  // Discriminant label printed in the table, and the one used in the
  // corresponding lemma when it differs (row 1 only).
  const std::string& table_label() const { return table_label_; }
  const std::string& lemma_label() const { return lemma_label_; }
  int milnor_number() const { return milnor_; }

  const std::vector<ThetaDirection>& directions() const { return directions_; }
  // Names of the normal-space basis as displayed for this row.
  const std::vector<std::string>& displayed_basis() const { return displayed_basis_; }

  // Coefficients that must vanish for a Lipschitz verdict. For row 1 with
  // k != l the table only states necessity.
  const std::vector<std::string>& obstructing() const { return obstructing_; }
  bool necessity_only() const { return necessity_only_; }
  Expectation expected(const Coefficients& coeffs) const;

  // Test curve displayed for this row and the exponent m of <s^m>.
  const std::string& displayed_curve() const { return curve_; }
  int displayed_curve_order() const { return curve_order_; }

  int default_max_exponent() const;

 private:
  NormalForm(int id, int k, int l, MatrixGerm matrix);

  int id_;
  int k_;
  int l_;
  MatrixGerm matrix_;
  std::string table_label_;
  std::string lemma_label_;
  int milnor_ = 0;
  std::vector<ThetaDirection> directions_;
  std::vector<std::string> displayed_basis_;
  std::vector<std::string> obstructing_;
  bool necessity_only_ = false;
  std::string curve_;
  int curve_order_ = 0;
};

/// Builds theta from named coefficients (missing names are 0). Throws on an
/// unknown name.
MatrixGerm theta_from_coefficients(const NormalForm& nf, const Coefficients& coeffs);

struct DirectionCheck {
  std::string name;
  std::string element;        // e.g. "y^2*E11"
  bool in_computed_basis;     // the element itself is a computed representative
  std::vector<Rational> class_coordinates;  // its class modulo the tangent space
};

/// Compares the named directions with the computed normal space.
std::vector<DirectionCheck> check_directions(const NormalForm& nf, const TangentSpaceResult& ns);

/// The computed basis and the displayed one hold the same elements (order
/// of listing ignored).
bool matches_displayed_basis(const NormalForm& nf, const TangentSpaceResult& ns);

Coefficients parse_coefficients(std::string_view text);  // "a1=1, b2=-3/4"
std::string coefficients_to_string(const Coefficients& coeffs);

enum class Outcome { Lipschitz, NotLipschitz, Inconclusive };
enum class Route { Constant = 0, Diagonal = 1, Inclusion = 2, CurveWitness = 3, Search = 4 };

std::string to_string(Outcome o);
std::string to_string(Route r);
std::string to_string(Expectation e);

struct MembershipProof {
  Polynomial element;
  std::vector<Polynomial> cofactors;  // against the target's generators
  bool replayed = false;
};

// every generator of `source` lies in `target`
struct InclusionCertificate {
  std::string source;
  std::string target;
  std::vector<Polynomial> target_generators;
  std::vector<MembershipProof> proofs;

  bool replay() const;
};

struct AuditRecord {
  bool inclusion_certified = false;
  bool inclusion_budget_exceeded = false;
  std::optional<Witness> witness;
  SearchReport search;
  bool contradiction = false;
};

struct Timings {
  double inclusion_ms = 0;
  double curves_ms = 0;
  double total_ms = 0;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  Route route = Route::Search;
  std::vector<InclusionCertificate> inclusions;
  std::optional<Witness> witness;
  std::optional<WitnessReplay> replay;
  SearchReport search;
  std::vector<std::string> notes;
  std::vector<std::string> assumed_preconditions{"unfolding is homeomorphism onto image"};
  std::optional<AuditRecord> audit;
  std::string field = "complex";
  Timings timings;

  std::string germ;
  std::string theta;
  std::vector<Polynomial> unfolding_generators;
  std::vector<Polynomial> direction_generators;
};

struct AnalyzeOptions {
  // max_exponent <= 0 selects 2 * (max entry degree of F) + 2
  CurveSearchConfig curves{0, {1, 2}, true};
  std::size_t budget = 1'000'000;
  bool audit = false;
  std::size_t audit_budget = 50'000;
  GroebnerOptions groebner;
  Execution execution = Execution::Parallel;
  std::string field = "complex";
};

Verdict analyze(const MatrixGerm& F, const MatrixGerm& theta, const AnalyzeOptions& options = {});

struct TableConfig {
  int max_k = 4;
  int max_l = 4;
  std::uint64_t seed = 20240917;
  bool audit = true;
  std::size_t budget = 1'000'000;
  std::size_t audit_budget = 50'000;
};

struct TableCell {
  int row;
  int k;
  int l;
  std::string direction;  // a coefficient name, "random" or "zero"
  Coefficients coefficients;
  Expectation expected;
  Verdict verdict;
  bool pass;
  std::string reason;
};

struct TableReport {
  std::vector<TableCell> cells;
  double seconds = 0;

  std::size_t passed() const;
  bool all_pass() const;
};

/// Nonzero rational with numerator in [-9, 9] and denominator in [1, 5],
/// taken straight from the engine output (no library distributions, so the
/// sequence is the same on every platform).
Rational portable_random_rational(std::mt19937_64& engine);

std::vector<TableCell> table_cells(const TableConfig& config);
void run_cell(TableCell& cell, const TableConfig& config, Execution inner);

TableReport reproduce_paper_table(const TableConfig& config = {},
                                  Execution mode = Execution::Parallel);

}  // namespace lipeq
