#include "lipeq/double.hpp"

#include <algorithm>

namespace lipeq {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

MatrixGerm::MatrixGerm(RingPtr ring, std::size_t rows, std::size_t cols,
                       std::vector<Polynomial> entries, bool symmetric)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)),
      symmetric_(symmetric) {
  if (rows_ == 0 || cols_ == 0) throw ShapeMismatch("matrix germ needs at least one entry");
  if (entries_.size() != rows_ * cols_) throw ShapeMismatch("entry count does not match shape");
  for (const auto& e : entries_) require_same_ring(ring_, e.ring());
  if (symmetric_) {
    if (rows_ != cols_) throw ShapeMismatch("symmetric germ must be square");
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!(entry(i, j) == entry(j, i)))
          throw ShapeMismatch("entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                              ") differ in a symmetric germ");
  }
}

MatrixGerm MatrixGerm::zero(RingPtr ring, std::size_t rows, std::size_t cols, bool symmetric) {
  std::vector<Polynomial> e(rows * cols, Polynomial(ring));
  return MatrixGerm(std::move(ring), rows, cols, std::move(e), symmetric);
}

MatrixGerm MatrixGerm::unit(RingPtr ring, std::size_t rows, std::size_t cols, bool symmetric,
                            Position pos, const Polynomial& value) {
  std::vector<Polynomial> e(rows * cols, Polynomial(ring));
  e[pos.first * cols + pos.second] = value;
  if (symmetric) e[pos.second * cols + pos.first] = value;
  return MatrixGerm(std::move(ring), rows, cols, std::move(e), symmetric);
}

MatrixGerm MatrixGerm::parse(std::string_view text, RingPtr ring) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("matrix germ needs a 'sym:' or 'gen:' header");
  const std::string_view header = trim(text.substr(0, colon));
  bool symmetric;
  if (header == "sym") {
    symmetric = true;
  } else if (header == "gen") {
    symmetric = false;
  } else {
    throw ParseError("unknown matrix header '" + std::string(header) + "'");
  }
  std::vector<Polynomial> entries;
  std::size_t cols = 0;
  const auto rows = split(text.substr(colon + 1), ';');
  for (const auto& row : rows) {
    const auto cells = split(row, ',');
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) throw ParseError("ragged matrix rows");
    for (const auto& c : cells) entries.push_back(Polynomial::parse(trim(c), ring));
  }
  return MatrixGerm(std::move(ring), rows.size(), cols, std::move(entries), symmetric);
}

std::vector<Position> MatrixGerm::positions() const {
  std::vector<Position> out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = symmetric_ ? i : 0; j < cols_; ++j) out.emplace_back(i, j);
  return out;
}

std::vector<Polynomial> MatrixGerm::components() const {
  std::vector<Polynomial> out;
  for (const auto& [i, j] : positions()) out.push_back(entry(i, j));
  return out;
}

bool MatrixGerm::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool MatrixGerm::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.is_constant(); });
}

int MatrixGerm::max_degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.total_degree());
  return d;
}

bool MatrixGerm::same_shape(const MatrixGerm& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && symmetric_ == other.symmetric_;
}

MatrixGerm MatrixGerm::map(const std::function<Polynomial(const Polynomial&)>& f) const {
  std::vector<Polynomial> e;
  e.reserve(entries_.size());
  for (const auto& p : entries_) e.push_back(f(p));
  RingPtr ring = e.front().ring();
  return MatrixGerm(std::move(ring), rows_, cols_, std::move(e), symmetric_);
}

MatrixGerm MatrixGerm::embedded(const RingPtr& target) const {
  return map([&](const Polynomial& p) { return embed(p, target); });
}

MatrixGerm MatrixGerm::scaled(const Rational& c) const {
  return map([&](const Polynomial& p) { return p.scaled(c); });
}

MatrixGerm operator+(const MatrixGerm& a, const MatrixGerm& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix shapes differ");
  std::vector<Polynomial> e;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) e.push_back(a.entries_[k] + b.entries_[k]);
  return MatrixGerm(a.ring_, a.rows_, a.cols_, std::move(e), a.symmetric_ && b.symmetric_);
}

bool operator==(const MatrixGerm& a, const MatrixGerm& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string MatrixGerm::to_string() const {
  std::string out = symmetric_ ? "sym: " : "gen: ";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += " ; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += entry(i, j).to_string();
    }
  }
  return out;
}

Unfolding build_unfolding(const MatrixGerm& F, const MatrixGerm& theta,
                          const std::string& parameter) {
  if (F.rows() != theta.rows() || F.cols() != theta.cols())
    throw ShapeMismatch("germ and direction have different shapes");
  if (F.symmetric() && !theta.symmetric())
    throw ShapeMismatch("a symmetric germ needs a symmetric direction");
  require_same_ring(F.ring(), theta.ring());
  if (F.ring()->index_of(parameter))
    throw Error("parameter symbol '" + parameter + "' collides with a ring variable");
  std::vector<std::string> names{parameter};
  for (const auto& n : F.ring()->names()) names.push_back(n);
  RingPtr ring = RingContext::make(std::move(names), F.ring()->order(), false,
                                   F.ring()->exponent_cap());
  const Polynomial t = Polynomial::variable(ring, 0);
  const MatrixGerm base = F.embedded(ring);
  const MatrixGerm dir = theta.embedded(ring);
  std::vector<Polynomial> e;
  for (std::size_t k = 0; k < base.entries().size(); ++k)
    e.push_back(base.entries()[k] + t * dir.entries()[k]);
  MatrixGerm total(ring, F.rows(), F.cols(), std::move(e), F.symmetric());
  return Unfolding{parameter, F, theta, std::move(total)};
}

Polynomial double_of(const Polynomial& p) {
  const RingPtr doubled = p.ring()->doubled_extension();
  const std::size_t h = p.ring()->size();
  std::vector<Term> terms;
  terms.reserve(2 * p.size());
  for (const auto& t : p.terms()) {
    Monomial a(doubled->size());
    Monomial b(doubled->size());
    for (std::size_t i = 0; i < h; ++i) {
      a.set(i, t.mono[i]);
      b.set(h + i, t.mono[i]);
    }
    terms.push_back({std::move(a), t.coeff});
    terms.push_back({std::move(b), -t.coeff});
  }
  return Polynomial::from_terms(doubled, std::move(terms));
}

DoubledIdeal double_ideal(std::span<const Polynomial> components, std::string source) {
  if (components.empty()) throw Error("double_ideal needs at least one component");
  const RingPtr& ring = components.front().ring();
  std::vector<Polynomial> gens;
  for (const auto& c : components) {
    require_same_ring(ring, c.ring());
    gens.push_back(double_of(c));
  }
  return DoubledIdeal{std::move(source), {components.begin(), components.end()},
                      Ideal(ring->doubled_extension(), std::move(gens))};
}

DoubledIdeal unfolding_ideal(const Unfolding& u) {
  std::vector<Polynomial> comps{Polynomial::variable(u.ring(), 0)};
  for (auto& c : u.total.components()) comps.push_back(std::move(c));
  return double_ideal(comps, "I_D(F~)");
}

DoubledIdeal direction_ideal(const Unfolding& u) {
  std::vector<Polynomial> comps{Polynomial::constant(u.ring(), 1)};
  for (const auto& c : u.total.components()) comps.push_back(partial_derivative(c, 0));
  return double_ideal(comps, "I_D(dF~/dt)");
}

Ideal diagonal_ideal(const RingPtr& doubled) {
  if (!doubled->doubled()) throw Error("diagonal ideal needs a doubled ring");
  const std::size_t h = doubled->half();
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < h; ++i)
    gens.push_back(Polynomial::variable(doubled, i) - Polynomial::variable(doubled, h + i));
  return Ideal(doubled, std::move(gens));
}

std::vector<Polynomial> paper_view(std::span<const Polynomial> generators) {
  std::vector<Polynomial> out;
  for (const auto& g : generators) {
    const RingPtr& ring = g.ring();
    if (!ring->doubled()) throw Error("collapsing t' needs a doubled ring");
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ring->size(); ++i)
      images.push_back(Polynomial::variable(ring, i == ring->half() ? 0 : i));
    Polynomial p = substitute(g, images);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lipeq
