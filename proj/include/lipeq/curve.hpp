#pragma once

// Curve test for integral closure: pull an ideal back along a polynomial
// curve germ s -> phi(s), compare orders of vanishing in k[s]_(s).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lipeq/groebner.hpp"
#include "lipeq/poly.hpp"

namespace lipeq {

class TestCurve {
 public:
  // One component per ring variable, each vanishing at s = 0.
  TestCurve(RingPtr ring, std::vector<UnivariatePoly> components);

  // "s^4, 2s^4, 2s, s^4, s^4, s" in ring-variable order.
  static TestCurve parse(std::string_view text, RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<UnivariatePoly>& components() const { return components_; }
  std::string to_string() const;

  friend bool operator==(const TestCurve& a, const TestCurve& b) {
    return a.components_ == b.components_;
  }

 private:
  RingPtr ring_;
  std::vector<UnivariatePoly> components_;
};

/// phi*(p) computed by dense univariate arithmetic.
UnivariatePoly pull_back(const Polynomial& p, const TestCurve& curve);

struct PullbackSummary {
  std::vector<Polynomial> generators;
  std::vector<UnivariatePoly> pullbacks;
  std::vector<Valuation> orders;
  // k[s]_(s) is a DVR, so phi*(I) = <s^m> with m the least generator order.
  Valuation ideal_order = Valuation::infinite();
};

PullbackSummary pullback_ideal(const TestCurve& curve, const Ideal& ideal);

struct Witness {
  TestCurve curve;
  Polynomial element;
  UnivariatePoly pullback;
  Valuation element_order;
  Valuation ideal_order;
  // ideal_order - element_order; empty when the ideal pulls back to zero.
  std::optional<int> margin;
};

std::optional<Witness> curve_obstruction(const TestCurve& curve, const Polynomial& h,
                                         const Ideal& ideal);

/// Recomputes the witness orders by substituting into the polynomial ring
/// k[s] (a code path independent of pull_back). True iff it reproduces the
/// stored orders and the strict inequality.
struct WitnessReplay {
  Valuation element_order;
  Valuation ideal_order;
  bool confirmed;
};
WitnessReplay replay_witness(const Witness& w, const Ideal& ideal);

struct CurveSearchConfig {
  int max_exponent = 4;
  std::vector<Rational> coefficients{1, 2};
  // In a doubled ring, give the parameter t (variable 0) and t' the same
  // component.
  bool share_parameter = true;
};

/// v_i -> c_i s^{e_i} for every ring variable.
struct MonomialCurve {
  std::vector<int> exponents;
  std::vector<Rational> coefficients;

  int total_degree() const;
  TestCurve to_test_curve(const RingPtr& ring) const;
};

/// Every monomial curve with exponents in 1..max_exponent and coefficients
/// from the configured set, ordered by total degree, then exponent tuple,
/// then coefficient tuple (both lexicographic). Generated one degree level
/// at a time.
class CurveStream {
 public:
  CurveStream(RingPtr ring, CurveSearchConfig config);

  std::optional<MonomialCurve> next();
  void reset();
  // Number of curves in the whole stream.
  std::size_t size() const;

  const RingPtr& ring() const { return ring_; }
  const CurveSearchConfig& config() const { return config_; }

 private:
  void load_level();
  MonomialCurve expand(const std::vector<int>& free_exps, const std::vector<std::size_t>& coeff_idx) const;

  RingPtr ring_;
  CurveSearchConfig config_;
  std::vector<std::size_t> free_vars_;
  std::vector<int> weights_;
  std::size_t tied_ = 0;  // primed parameter index when shared, else npos
  int level_ = 0;
  int max_level_ = 0;
  std::vector<std::vector<int>> level_exps_;
  std::size_t exp_pos_ = 0;
  std::vector<std::size_t> coeff_idx_;
  bool coeff_started_ = false;
};

std::vector<TestCurve> enumerate_test_curves(const RingPtr& ring, const CurveSearchConfig& config,
                                             std::size_t limit = static_cast<std::size_t>(-1));

enum class Execution { Serial, Parallel };

struct SearchReport {
  std::size_t curves_tried = 0;
  std::size_t budget = 0;
  bool stream_exhausted = false;
  // Smallest ord(phi*h) - m seen over curves where both are finite.
  std::optional<int> min_gap;
};

struct ClosureResult {
  std::optional<Witness> witness;
  // Index into the tested elements of the offending element.
  std::size_t element_index = 0;
  SearchReport report;

  bool not_in_closure() const { return witness.has_value(); }
};

/// Searches the curve stream for a witness against any of the elements; the
/// returned witness is the first in stream order (first element on ties),
/// whatever the execution mode. Absence of a witness proves nothing.
ClosureResult closure_test(std::span<const Polynomial> elements, const Ideal& ideal,
                           const CurveSearchConfig& config, std::size_t budget,
                           Execution mode = Execution::Parallel);

ClosureResult closure_test(const Polynomial& h, const Ideal& ideal,
                           const CurveSearchConfig& config, std::size_t budget,
                           Execution mode = Execution::Parallel);

/// Same test over an explicit list of curves, general arithmetic only.
ClosureResult closure_test(std::span<const Polynomial> elements, const Ideal& ideal,
                           std::span<const TestCurve> curves);

}  // namespace lipeq
