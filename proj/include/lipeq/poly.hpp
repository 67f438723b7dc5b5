#pragma once

// Exact multivariate polynomials over Q in a named ring context.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lipeq/error.hpp"
#include "lipeq/rational.hpp"

namespace lipeq {

enum class MonomialOrder { GradedReverseLex, Lex };

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

/// Ordered variable names plus a monomial order. Doubled rings have the form
/// (v1..vm, v1'..vm'), the second half being the primed copy of the first.
class RingContext {
  struct Token {};

 public:
  static constexpr int kDefaultExponentCap = 64;

  static RingPtr make(std::vector<std::string> names,
                      MonomialOrder order = MonomialOrder::GradedReverseLex,
                      bool doubled = false,
                      int exponent_cap = kDefaultExponentCap);

  RingContext(Token, std::vector<std::string> names, MonomialOrder order,
              bool doubled, int exponent_cap);
  RingContext(const RingContext&) = delete;
  RingContext& operator=(const RingContext&) = delete;

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;
  MonomialOrder order() const { return order_; }
  bool doubled() const { return doubled_; }
  int exponent_cap() const { return exponent_cap_; }

  // Number of unprimed variables of a doubled ring.
  std::size_t half() const { return names_.size() / 2; }

  /// The ring (v.., v'..) built on this one; created once and shared, so
  /// repeated doubling of polynomials of this ring lands in one context.
  /// Throws if this ring is itself doubled or already uses primed names.
  RingPtr doubled_extension() const;

  RingPtr with_order(MonomialOrder order) const;

  bool same_as(const RingContext& other) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  MonomialOrder order_;
  bool doubled_;
  int exponent_cap_;
  mutable std::once_flag doubled_once_;
  mutable RingPtr doubled_ext_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned e);
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  const std::vector<std::uint16_t>& exponents() const { return exps_; }

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  int max_exponent() const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

 private:
  std::vector<std::uint16_t> exps_;
  int degree_ = 0;
};

// Returns <0, 0, >0 as a is smaller than, equal to, larger than b.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Immutable-by-convention polynomial: terms sorted by decreasing monomial
/// order, no zero coefficients, no repeated monomials.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, Monomial m, const Rational& c = 1);
  // Sorts, merges and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  static Polynomial parse(std::string_view text, RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  // -1 for the zero polynomial.
  int total_degree() const;
  // Lowest total degree of a term; -1 for zero.
  int low_degree() const;
  // Coefficient of the constant term.
  Rational constant_term() const;
  // Sum of the terms of exactly the given total degree.
  Polynomial homogeneous_part(int degree) const;
  // Drops every term of total degree above max_degree.
  Polynomial truncated(int max_degree) const;
  bool uses_variable(std::size_t index) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial monic() const;

  // Subtracts c*m*other in place; the workhorse of division.
  void sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& other);

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Grammar: terms joined by + / -; a term is an optional rational
// coefficient followed by factors v or v^k, optionally separated by '*'.
Polynomial poly_parse(std::string_view text, const RingPtr& ring);

enum class ArithOp { Add, Sub, Mul };
Polynomial poly_arith(ArithOp op, const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Rational& c, const Polynomial& p);

/// Ring homomorphism sending variable i of p's ring to images[i]. All images
/// must share one target ring.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);
Polynomial substitute(const Polynomial& p,
                      const std::map<std::string, Polynomial>& assignment);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);
Polynomial partial_derivative(const Polynomial& p, std::string_view var);

/// Re-expresses p in a ring that contains every variable name of p's ring.
Polynomial embed(const Polynomial& p, const RingPtr& target);

/// Order of vanishing of a univariate series, possibly infinite.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(int v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  int value() const { return *value_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return finite(*a.value_ + *b.value_);
  }

  std::string to_string() const;

 private:
  Valuation() = default;
  explicit Valuation(int v) : value_(v) {}
  std::optional<int> value_;
};

/// Dense univariate polynomial in s; trailing zeros trimmed.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Rational> coeffs);
  static UnivariatePoly monomial(const Rational& c, int degree);
  // p must live in a one-variable ring.
  static UnivariatePoly from_polynomial(const Polynomial& p);
  static UnivariatePoly parse(std::string_view text, std::string_view var = "s");

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int d) const;
  Rational constant_term() const { return coefficient(0); }

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  UnivariatePoly scaled(const Rational& c) const;
  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

  // Single nonzero term c*s^e.
  bool is_monomial() const;

  std::string to_string(std::string_view var = "s") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Valuation order_of_vanishing(const UnivariatePoly& p);

}  // namespace lipeq
