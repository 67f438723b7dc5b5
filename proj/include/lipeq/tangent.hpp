#pragma once

// Extended tangent spaces of matrix germs, truncated at a jet degree, and
// monomial bases of the normal space.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lipeq/double.hpp"
#include "lipeq/poly.hpp"

namespace lipeq {

enum class GroupAction { General, SymmetricCongruence };

/// Incremental row echelon form over Q. Rows are sparse vectors indexed by
/// column; every stored row has leading coefficient 1 at its pivot.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Rational>;

  // Reduces the row against the stored pivots; returns true (and stores it)
  // when it was independent.
  bool insert(Row row);
  // Full reduction: the result has no entry in a pivot column.
  Row reduce(Row row) const;

  std::size_t rank() const { return pivots_.size(); }
  bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }

 private:
  std::map<std::size_t, Row> pivots_;
};

/// Truncated jets of n x p matrices: (monomial of degree <= d) x position.
class JetSpace {
 public:
  JetSpace(RingPtr ring, int degree, std::size_t rows, std::size_t cols, bool symmetric);

  const RingPtr& ring() const { return ring_; }
  int degree() const { return degree_; }
  std::size_t dimension() const { return monomials_.size() * positions_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::vector<Position>& positions() const { return positions_; }

  // Columns are numbered from least to most preferred representative:
  // preference is diagonal positions first, then off-diagonal ones
  // row-major, then lower degree, then smaller exponent tuple.
  std::size_t column(std::size_t monomial, std::size_t position) const;
  std::pair<std::size_t, std::size_t> label(std::size_t column) const;

  SparseEchelon::Row coordinates(const MatrixGerm& m) const;
  MatrixGerm element(std::size_t column) const;
  std::string element_name(std::size_t column) const;

 private:
  RingPtr ring_;
  int degree_;
  std::size_t rows_;
  std::size_t cols_;
  bool symmetric_;
  std::vector<Monomial> monomials_;
  std::vector<Position> positions_;
  std::map<std::vector<std::uint16_t>, std::size_t> monomial_index_;
  std::vector<std::size_t> column_of_;  // monomial * npos + position
  std::vector<std::pair<std::size_t, std::size_t>> label_of_;
};

std::vector<MatrixGerm> tangent_generators(const MatrixGerm& F, GroupAction action);

struct NormalElement {
  std::string name;  // e.g. "y^2*E22"
  MatrixGerm matrix;
  std::size_t column;
};

struct TangentSpaceResult {
  std::vector<MatrixGerm> generators;
  int jet_degree = 0;
  std::size_t jet_dimension = 0;
  std::size_t rank = 0;
  std::size_t codimension = 0;
  std::vector<NormalElement> normal_basis;
  bool stable = false;

  std::shared_ptr<const JetSpace> jets;
  std::shared_ptr<const SparseEchelon> tangent;

  /// Coordinates of m modulo the truncated tangent space, one per normal
  /// basis element.
  std::vector<Rational> normal_coordinates(const MatrixGerm& m) const;
  bool in_tangent_space(const MatrixGerm& m) const;
  /// Dimension of the span of the given germs modulo the tangent space.
  std::size_t rank_modulo(const std::vector<MatrixGerm>& germs) const;
  std::vector<std::string> names() const;
};

int default_jet_degree(const MatrixGerm& F);

/// Normal-space basis at jet degree d (0 selects the default); `stable`
/// records whether degree d + 1 gives the same basis.
TangentSpaceResult normal_space_basis(const MatrixGerm& F, GroupAction action, int jet_degree = 0);

/// True iff the linear parts of the entries span every linear form in the
/// source variables.
bool is_reduced_point_minors(const MatrixGerm& F);

}  // namespace lipeq
