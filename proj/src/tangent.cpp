#include "lipeq/tangent.hpp"

#include <algorithm>
#include <numeric>

namespace lipeq {

namespace {

void subtract_scaled(SparseEchelon::Row& row, const Rational& f, const SparseEchelon::Row& pivot) {
  for (const auto& [col, v] : pivot) {
    auto it = row.find(col);
    if (it == row.end()) {
      row.emplace(col, -f * v);
    } else {
      it->second -= f * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  auto rec = [&](auto&& self, std::size_t v, int left) -> void {
    if (v == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.set(v, static_cast<unsigned>(e));
      self(self, v + 1, left - e);
    }
    cur.set(v, 0);
  };
  rec(rec, 0, degree);
  return out;
}

int low_degree(const MatrixGerm& g) {
  int low = -1;
  for (const auto& e : g.entries()) {
    if (e.is_zero()) continue;
    low = low < 0 ? e.low_degree() : std::min(low, e.low_degree());
  }
  return low;
}

TangentSpaceResult compute_at(const MatrixGerm& F, GroupAction action, int d) {
  TangentSpaceResult r;
  r.generators = tangent_generators(F, action);
  r.jet_degree = d;
  auto jets = std::make_shared<JetSpace>(F.ring(), d, F.rows(), F.cols(),
                                         action == GroupAction::SymmetricCongruence);
  auto ech = std::make_shared<SparseEchelon>();
  for (const auto& g : r.generators) {
    const int low = low_degree(g);
    if (low < 0) continue;
    for (const auto& m : jets->monomials()) {
      if (m.degree() > d - low) continue;
      const MatrixGerm mg = g.map([&](const Polynomial& p) { return p.times_term(m, 1); });
      ech->insert(jets->coordinates(mg));
    }
  }
  r.jet_dimension = jets->dimension();
  r.rank = ech->rank();
  r.codimension = r.jet_dimension - r.rank;
  for (std::size_t col = r.jet_dimension; col-- > 0;)
    if (!ech->is_pivot(col)) r.normal_basis.push_back({jets->element_name(col), jets->element(col), col});
  // listing order: lower degree, then position preference, then exponents
  std::stable_sort(r.normal_basis.begin(), r.normal_basis.end(),
                   [&](const NormalElement& a, const NormalElement& b) {
                     const auto la = jets->label(a.column);
                     const auto lb = jets->label(b.column);
                     const int da = jets->monomials()[la.first].degree();
                     const int db = jets->monomials()[lb.first].degree();
                     if (da != db) return da < db;
                     return a.column > b.column;
                   });
  r.jets = std::move(jets);
  r.tangent = std::move(ech);
  return r;
}

}  // namespace

bool SparseEchelon::insert(Row row) {
  while (!row.empty()) {
    const auto lead = row.begin();
    auto p = pivots_.find(lead->first);
    if (p == pivots_.end()) {
      const Rational inv = 1 / lead->second;
      for (auto& [c, v] : row) v *= inv;
      const std::size_t col = row.begin()->first;
      pivots_.emplace(col, std::move(row));
      return true;
    }
    const Rational f = lead->second;
    subtract_scaled(row, f, p->second);
  }
  return false;
}

SparseEchelon::Row SparseEchelon::reduce(Row row) const {
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t c = it->first;
    const Rational f = it->second;
    subtract_scaled(row, f, p->second);
    it = row.upper_bound(c);
  }
  return row;
}

JetSpace::JetSpace(RingPtr ring, int degree, std::size_t rows, std::size_t cols, bool symmetric)
    : ring_(std::move(ring)), degree_(degree), rows_(rows), cols_(cols), symmetric_(symmetric) {
  if (degree_ < 0) throw Error("jet degree must be non-negative");
  if (symmetric_ && rows_ != cols_) throw ShapeMismatch("symmetric jets need a square shape");
  monomials_ = monomials_up_to(ring_->size(), degree_);
  for (std::size_t k = 0; k < monomials_.size(); ++k) monomial_index_.emplace(monomials_[k].exponents(), k);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) positions_.emplace_back(i, i);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = symmetric_ ? i + 1 : 0; j < cols_; ++j)
      if (i != j) positions_.emplace_back(i, j);

  const std::size_t npos = positions_.size();
  std::vector<std::pair<std::size_t, std::size_t>> pref;
  for (std::size_t p = 0; p < npos; ++p)
    for (std::size_t m = 0; m < monomials_.size(); ++m) pref.emplace_back(m, p);
  std::stable_sort(pref.begin(), pref.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    const Monomial& ma = monomials_[a.first];
    const Monomial& mb = monomials_[b.first];
    if (ma.degree() != mb.degree()) return ma.degree() < mb.degree();
    return ma.exponents() < mb.exponents();
  });
  const std::size_t n = pref.size();
  column_of_.assign(n, 0);
  label_of_.assign(n, {0, 0});
  for (std::size_t rank = 0; rank < n; ++rank) {
    const std::size_t col = n - 1 - rank;
    column_of_[pref[rank].first * npos + pref[rank].second] = col;
    label_of_[col] = pref[rank];
  }
}

std::size_t JetSpace::column(std::size_t monomial, std::size_t position) const {
  return column_of_[monomial * positions_.size() + position];
}

std::pair<std::size_t, std::size_t> JetSpace::label(std::size_t column) const {
  return label_of_[column];
}

SparseEchelon::Row JetSpace::coordinates(const MatrixGerm& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) throw ShapeMismatch("germ shape does not match the jet space");
  require_same_ring(ring_, m.ring());
  SparseEchelon::Row row;
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    const Polynomial& e = m.entry(positions_[p].first, positions_[p].second);
    for (const auto& t : e.terms()) {
      if (t.mono.degree() > degree_) continue;
      row[column(monomial_index_.at(t.mono.exponents()), p)] += t.coeff;
    }
  }
  std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
  return row;
}

MatrixGerm JetSpace::element(std::size_t column) const {
  const auto [m, p] = label_of_[column];
  return MatrixGerm::unit(ring_, rows_, cols_, symmetric_, positions_[p],
                          Polynomial::monomial(ring_, monomials_[m]));
}

std::string JetSpace::element_name(std::size_t column) const {
  const auto [m, p] = label_of_[column];
  std::string unit = "E" + std::to_string(positions_[p].first + 1) + std::to_string(positions_[p].second + 1);
  if (monomials_[m].is_one()) return unit;
  return Polynomial::monomial(ring_, monomials_[m]).to_string() + "*" + unit;
}

std::vector<MatrixGerm> tangent_generators(const MatrixGerm& F, GroupAction action) {
  if (action == GroupAction::SymmetricCongruence && !F.symmetric())
    throw ShapeMismatch("congruence action needs a symmetric germ");
  const RingPtr& ring = F.ring();
  const std::size_t n = F.rows();
  const std::size_t p = F.cols();
  std::vector<MatrixGerm> out;
  for (std::size_t v = 0; v < ring->size(); ++v)
    out.push_back(F.map([&](const Polynomial& e) { return partial_derivative(e, v); }));

  if (action == GroupAction::SymmetricCongruence) {
    // E_ab F + F E_ab^T has entries delta_ia F_bj + delta_ja F_ib
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<Polynomial> e(n * n, Polynomial(ring));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i == a) e[i * n + j] = e[i * n + j] + F.entry(b, j);
            if (j == a) e[i * n + j] = e[i * n + j] + F.entry(i, b);
          }
        out.emplace_back(ring, n, n, std::move(e), true);
      }
    }
    return out;
  }

  // R_il: row l replaced by row i of F; C_jm: column m replaced by column j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<Polynomial> e(n * p, Polynomial(ring));
      for (std::size_t j = 0; j < p; ++j) e[l * p + j] = F.entry(i, j);
      out.emplace_back(ring, n, p, std::move(e), false);
    }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t m = 0; m < p; ++m) {
      std::vector<Polynomial> e(n * p, Polynomial(ring));
      for (std::size_t i = 0; i < n; ++i) e[i * p + m] = F.entry(i, j);
      out.emplace_back(ring, n, p, std::move(e), false);
    }
  return out;
}

int default_jet_degree(const MatrixGerm& F) { return 2 * F.max_degree() + 2; }

TangentSpaceResult normal_space_basis(const MatrixGerm& F, GroupAction action, int jet_degree) {
  const int d = jet_degree > 0 ? jet_degree : default_jet_degree(F);
  TangentSpaceResult r = compute_at(F, action, d);
  const TangentSpaceResult next = compute_at(F, action, d + 1);
  r.stable = r.names() == next.names();
  return r;
}

std::vector<Rational> TangentSpaceResult::normal_coordinates(const MatrixGerm& m) const {
  const SparseEchelon::Row red = tangent->reduce(jets->coordinates(m));
  std::vector<Rational> out;
  for (const auto& e : normal_basis) {
    auto it = red.find(e.column);
    out.push_back(it == red.end() ? Rational(0) : it->second);
  }
  return out;
}

bool TangentSpaceResult::in_tangent_space(const MatrixGerm& m) const {
  return tangent->reduce(jets->coordinates(m)).empty();
}

std::size_t TangentSpaceResult::rank_modulo(const std::vector<MatrixGerm>& germs) const {
  SparseEchelon copy = *tangent;
  std::size_t added = 0;
  for (const auto& g : germs)
    if (copy.insert(jets->coordinates(g))) ++added;
  return added;
}

std::vector<std::string> TangentSpaceResult::names() const {
  std::vector<std::string> out;
  for (const auto& e : normal_basis) out.push_back(e.name);
  return out;
}

bool is_reduced_point_minors(const MatrixGerm& F) {
  const std::size_t r = F.ring()->size();
  if (r == 0) return false;
  SparseEchelon ech;
  for (const auto& e : F.entries()) {
    SparseEchelon::Row row;
    for (const auto& t : e.terms()) {
      if (t.mono.degree() != 1) continue;
      for (std::size_t v = 0; v < r; ++v)
        if (t.mono[v]) row[v] = t.coeff;
    }
    if (!row.empty()) ech.insert(std::move(row));
  }
  return ech.rank() == r;
}

}  // namespace lipeq
