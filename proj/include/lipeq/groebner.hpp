#pragma once

// Buchberger bases, multivariate division and ideal membership over Q.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipeq/poly.hpp"

namespace lipeq {

struct GroebnerOptions {
  std::size_t max_pairs = 100000;
  int max_degree = 60;
  // Keep every basis element expressed in the input generators, so that
  // membership answers come with a replayable certificate.
  bool track_cofactors = true;
};

class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  MonomialOrder order() const { return ring_->order(); }
  std::span<const Polynomial> polynomials() const { return basis_; }
  std::span<const Polynomial> generators() const { return generators_; }
  bool has_cofactors() const { return has_cofactors_; }
  // basis[i] == sum_j cofactors(i)[j] * generators[j]
  const std::vector<Polynomial>& cofactors(std::size_t i) const { return cofactors_[i]; }
  std::size_t pairs_processed() const { return pairs_processed_; }
  std::size_t pairs_skipped() const { return pairs_skipped_; }

  std::string to_string() const;

 private:
  friend GroebnerBasis buchberger_impl(RingPtr, std::vector<Polynomial>, const GroebnerOptions&);
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
  std::vector<std::vector<Polynomial>> cofactors_;
  bool has_cofactors_ = false;
  std::size_t pairs_processed_ = 0;
  std::size_t pairs_skipped_ = 0;
};

/// Finite generator list in one ring. Zero generators are dropped; an ideal
/// with no generators left is the zero ideal. Copies share the basis cache.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

  const RingPtr& ring() const { return ring_; }
  std::span<const Polynomial> generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

  // Computed once (per cofactor-tracking flavour) and then reused.
  const GroebnerBasis& basis(const GroebnerOptions& opts = {}) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::shared_ptr<const GroebnerBasis> basis;
    // replaced bases stay alive so earlier references remain valid
    std::vector<std::shared_ptr<const GroebnerBasis>> retired;
  };
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

struct Division {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

/// Multivariate division: p == sum quotients[i]*divisors[i] + remainder and
/// no term of the remainder is divisible by a divisor's leading monomial.
Division divide(const Polynomial& p, std::span<const Polynomial> divisors);
Polynomial reduce(const Polynomial& p, std::span<const Polynomial> basis);

/// Reduced basis of a nonzero ideal, leading coefficients 1, sorted by
/// increasing leading monomial. Throws BudgetExceeded when the pair or
/// degree budget runs out.
GroebnerBasis buchberger(const Ideal& ideal, const GroebnerOptions& opts = {});

bool ideal_member(const Polynomial& p, const Ideal& ideal, const GroebnerOptions& opts = {});

/// Cofactors c with p == sum c[j]*generators[j], or nullopt when p is not in
/// the ideal.
std::optional<std::vector<Polynomial>> membership_cofactors(const Polynomial& p,
                                                            const Ideal& ideal,
                                                            const GroebnerOptions& opts = {});

/// True iff every generator of `inner` is a member of `outer`.
bool ideal_contains(const Ideal& outer, const Ideal& inner, const GroebnerOptions& opts = {});

/// Recombines sum cofactors[j]*generators[j] and compares with p.
bool replay_cofactors(const Polynomial& p, std::span<const Polynomial> generators,
                      std::span<const Polynomial> cofactors);

}  // namespace lipeq
