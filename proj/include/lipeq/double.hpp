#pragma once

// Matrix germs, one-parameter unfoldings F + t*theta and doubled ideals
// I_D(h) generated by h_i(z) - h_i(z').

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lipeq/groebner.hpp"
#include "lipeq/poly.hpp"

namespace lipeq {

using Position = std::pair<std::size_t, std::size_t>;

class MatrixGerm {
 public:
  MatrixGerm(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries,
             bool symmetric);

  static MatrixGerm zero(RingPtr ring, std::size_t rows, std::size_t cols, bool symmetric);
  // value at (i,j), mirrored to (j,i) when symmetric, zero elsewhere
  static MatrixGerm unit(RingPtr ring, std::size_t rows, std::size_t cols, bool symmetric,
                         Position pos, const Polynomial& value);
  // "sym: y^3, x ; x, y^2" or "gen: ..."; rows split by ';', entries by ','.
  static MatrixGerm parse(std::string_view text, RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool symmetric() const { return symmetric_; }
  const Polynomial& entry(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const Polynomial> entries() const { return entries_; }

  /// Independent positions: the upper triangle for symmetric germs, every
  /// entry otherwise, in row-major order.
  std::vector<Position> positions() const;
  std::vector<Polynomial> components() const;

  bool is_zero() const;
  bool is_constant() const;
  int max_degree() const;
  bool same_shape(const MatrixGerm& other) const;

  MatrixGerm map(const std::function<Polynomial(const Polynomial&)>& f) const;
  MatrixGerm embedded(const RingPtr& target) const;
  MatrixGerm scaled(const Rational& c) const;
  friend MatrixGerm operator+(const MatrixGerm& a, const MatrixGerm& b);
  friend bool operator==(const MatrixGerm& a, const MatrixGerm& b);

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
  bool symmetric_;
};

/// F~(t, x) = (t, F(x) + t*theta(x)) over the ring (t, x1..xr).
struct Unfolding {
  std::string parameter;
  MatrixGerm base;
  MatrixGerm direction;
  MatrixGerm total;

  const RingPtr& ring() const { return total.ring(); }
};

Unfolding build_unfolding(const MatrixGerm& F, const MatrixGerm& theta,
                          const std::string& parameter = "t");

struct DoubledIdeal {
  std::string source;
  std::vector<Polynomial> components;
  Ideal ideal;
};

/// h(z) - h(z') in the registered doubled extension of h's ring.
Polynomial double_of(const Polynomial& p);

DoubledIdeal double_ideal(std::span<const Polynomial> components, std::string source = "h");

/// I_D(F~): the unfolding's components are t followed by the independent
/// entries of F + t*theta, so t - t' is always a generator.
DoubledIdeal unfolding_ideal(const Unfolding& unfolding);

/// I_D(dF~/dt) = I_D(theta), living in the same doubled ring as I_D(F~).
DoubledIdeal direction_ideal(const Unfolding& unfolding);

/// <v - v' : v unprimed> for a doubled ring.
Ideal diagonal_ideal(const RingPtr& doubled);

/// Generators with the primed parameter replaced by the unprimed one (the
/// parameter is the first ring variable); zero images are dropped.
std::vector<Polynomial> paper_view(std::span<const Polynomial> generators);

}  // namespace lipeq
