#include "lipeq/groebner.hpp"

#include <algorithm>

namespace lipeq {

namespace {

struct Element {
  Polynomial poly;
  std::vector<Polynomial> cof;
};

std::vector<Polynomial> zero_vector(const RingPtr& ring, std::size_t n) {
  return std::vector<Polynomial>(n, Polynomial(ring));
}

void scale_element(Element& e, const Rational& c) {
  e.poly = e.poly.scaled(c);
  for (auto& q : e.cof) q = q.scaled(c);
}

// e -= sum_i quotients[i] * basis[i], applied to the cofactor vectors; the
// polynomial part is replaced by the division remainder.
void apply_division(Element& e, const Division& d, const std::vector<Element>& basis,
                    const std::vector<std::size_t>& which, bool track) {
  e.poly = d.remainder;
  if (!track) return;
  for (std::size_t k = 0; k < which.size(); ++k) {
    const Polynomial& q = d.quotients[k];
    if (q.is_zero()) continue;
    const auto& bc = basis[which[k]].cof;
    for (std::size_t j = 0; j < e.cof.size(); ++j)
      if (!bc[j].is_zero()) e.cof[j] = e.cof[j] - q * bc[j];
  }
}

void check_degree(const Polynomial& p, const GroebnerOptions& opts) {
  if (p.total_degree() > opts.max_degree)
    throw BudgetExceeded("Groebner degree budget exceeded (degree " +
                         std::to_string(p.total_degree()) + " > " +
                         std::to_string(opts.max_degree) + ")");
}

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)) {}

std::string GroebnerBasis::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ", ";
    out += basis_[i].to_string();
  }
  return out + "}";
}

Division divide(const Polynomial& p, std::span<const Polynomial> divisors) {
  const RingPtr& ring = p.ring();
  for (const auto& f : divisors) require_same_ring(ring, f.ring());
  Division d{Polynomial(ring), zero_vector(ring, divisors.size())};
  std::vector<Term> remainder;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term lt = rest.leading();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const Polynomial& f = divisors[i];
      if (f.is_zero() || !f.leading_monomial().divides(lt.mono)) continue;
      const Rational c = lt.coeff / f.leading_coeff();
      const Monomial m = lt.mono / f.leading_monomial();
      d.quotients[i] = d.quotients[i] + Polynomial::monomial(ring, m, c);
      rest.sub_mul_term(c, m, f);
      divided = true;
      break;
    }
    if (!divided) {
      remainder.push_back(lt);
      rest = rest - Polynomial::monomial(ring, lt.mono, lt.coeff);
    }
  }
  d.remainder = Polynomial::from_terms(ring, std::move(remainder));
  return d;
}

Polynomial reduce(const Polynomial& p, std::span<const Polynomial> basis) {
  return divide(p, basis).remainder;
}

GroebnerBasis buchberger_impl(RingPtr ring, std::vector<Polynomial> gens,
                              const GroebnerOptions& opts) {
  const bool track = opts.track_cofactors;
  const std::size_t ngen = gens.size();
  GroebnerBasis result(ring, gens);

  std::vector<Element> g;
  for (std::size_t j = 0; j < ngen; ++j) {
    check_degree(gens[j], opts);
    Element e{gens[j], track ? zero_vector(ring, ngen) : std::vector<Polynomial>{}};
    if (track) e.cof[j] = Polynomial::constant(ring, 1);
    scale_element(e, Rational(1) / e.poly.leading_coeff());
    g.push_back(std::move(e));
  }

  struct Pair {
    std::size_t i, j;
    int degree;
  };
  std::vector<Pair> queue;
  std::vector<std::vector<char>> pending;
  auto add_pairs_for = [&](std::size_t j) {
    for (auto& row : pending) row.resize(g.size(), 0);
    pending.emplace_back(g.size(), 0);
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial l = Monomial::lcm(g[i].poly.leading_monomial(), g[j].poly.leading_monomial());
      queue.push_back({i, j, l.degree()});
      pending[i][j] = pending[j][i] = 1;
    }
  };
  for (std::size_t j = 0; j < g.size(); ++j) add_pairs_for(j);

  auto is_pending = [&](std::size_t a, std::size_t b) { return pending[a][b] != 0; };

  while (!queue.empty()) {
    // normal strategy: lowest lcm degree first, earliest pair on ties
    auto it = std::min_element(queue.begin(), queue.end(), [](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    const Pair pr = *it;
    queue.erase(it);
    pending[pr.i][pr.j] = pending[pr.j][pr.i] = 0;

    const Monomial& lmi = g[pr.i].poly.leading_monomial();
    const Monomial& lmj = g[pr.j].poly.leading_monomial();
    if (Monomial::coprime(lmi, lmj)) {
      ++result.pairs_skipped_;
      continue;
    }
    const Monomial l = Monomial::lcm(lmi, lmj);
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (is_pending(pr.i, k) || is_pending(pr.j, k)) continue;
      chain = g[k].poly.leading_monomial().divides(l);
    }
    if (chain) {
      ++result.pairs_skipped_;
      continue;
    }

    if (++result.pairs_processed_ > opts.max_pairs)
      throw BudgetExceeded("Groebner pair budget exceeded (" + std::to_string(opts.max_pairs) +
                           " S-pairs)");

    // S-polynomial of two monic elements
    const Monomial mi = l / lmi;
    const Monomial mj = l / lmj;
    Element s{g[pr.i].poly.times_term(mi, 1), {}};
    s.poly.sub_mul_term(1, mj, g[pr.j].poly);
    if (track) {
      s.cof = zero_vector(ring, ngen);
      for (std::size_t c = 0; c < ngen; ++c) {
        const Polynomial& a = g[pr.i].cof[c];
        const Polynomial& b = g[pr.j].cof[c];
        Polynomial v = a.times_term(mi, 1);
        v.sub_mul_term(1, mj, b);
        s.cof[c] = std::move(v);
      }
    }

    std::vector<Polynomial> polys;
    std::vector<std::size_t> which;
    for (std::size_t k = 0; k < g.size(); ++k) {
      polys.push_back(g[k].poly);
      which.push_back(k);
    }
    const Division d = divide(s.poly, polys);
    apply_division(s, d, g, which, track);
    if (s.poly.is_zero()) continue;
    check_degree(s.poly, opts);
    scale_element(s, Rational(1) / s.poly.leading_coeff());
    g.push_back(std::move(s));
    add_pairs_for(g.size() - 1);
  }

  // minimal basis: drop elements whose leading monomial is a multiple of
  // another one (the earlier survives equal leading monomials)
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
      if (k == i) continue;
      const Monomial& a = g[k].poly.leading_monomial();
      const Monomial& b = g[i].poly.leading_monomial();
      if (a.divides(b) && (!(a == b) || k < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }

  // interreduce tails against the other minimal elements
  std::vector<Element> reduced;
  for (std::size_t idx : keep) {
    std::vector<Polynomial> others;
    std::vector<std::size_t> which;
    for (std::size_t k : keep) {
      if (k == idx) continue;
      others.push_back(g[k].poly);
      which.push_back(k);
    }
    Element e = g[idx];
    const Division d = divide(e.poly, others);
    apply_division(e, d, g, which, track);
    scale_element(e, Rational(1) / e.poly.leading_coeff());
    reduced.push_back(std::move(e));
  }
  const MonomialOrder ord = ring->order();
  std::sort(reduced.begin(), reduced.end(), [ord](const Element& a, const Element& b) {
    return compare(a.poly.leading_monomial(), b.poly.leading_monomial(), ord) < 0;
  });

  for (auto& e : reduced) {
    result.basis_.push_back(std::move(e.poly));
    if (track) result.cofactors_.push_back(std::move(e.cof));
  }
  result.has_cofactors_ = track;
  return result;
}

GroebnerBasis buchberger(const Ideal& ideal, const GroebnerOptions& opts) {
  if (ideal.is_zero()) throw Error("buchberger: the zero ideal has no basis to compute");
  return buchberger_impl(ideal.ring(), {ideal.generators().begin(), ideal.generators().end()},
                         opts);
}

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& p : generators) {
    require_same_ring(ring_, p.ring());
    if (!p.is_zero()) generators_.push_back(std::move(p));
  }
}

const GroebnerBasis& Ideal::basis(const GroebnerOptions& opts) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->basis || (opts.track_cofactors && !cache_->basis->has_cofactors())) {
    if (cache_->basis) cache_->retired.push_back(cache_->basis);
    cache_->basis = std::make_shared<const GroebnerBasis>(buchberger(*this, opts));
  }
  return *cache_->basis;
}

std::string Ideal::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].to_string();
  }
  return out + ">";
}

bool ideal_member(const Polynomial& p, const Ideal& ideal, const GroebnerOptions& opts) {
  require_same_ring(p.ring(), ideal.ring());
  if (p.is_zero()) return true;
  if (ideal.is_zero()) return false;
  return reduce(p, ideal.basis(opts).polynomials()).is_zero();
}

std::optional<std::vector<Polynomial>> membership_cofactors(const Polynomial& p,
                                                            const Ideal& ideal,
                                                            const GroebnerOptions& opts) {
  require_same_ring(p.ring(), ideal.ring());
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ideal.generators().size();
  if (p.is_zero()) return zero_vector(ring, n);
  if (ideal.is_zero()) return std::nullopt;
  GroebnerOptions tracked = opts;
  tracked.track_cofactors = true;
  const GroebnerBasis& gb = ideal.basis(tracked);
  const Division d = divide(p, gb.polynomials());
  if (!d.remainder.is_zero()) return std::nullopt;
  std::vector<Polynomial> cof = zero_vector(ring, n);
  for (std::size_t b = 0; b < d.quotients.size(); ++b) {
    if (d.quotients[b].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& c = gb.cofactors(b)[j];
      if (!c.is_zero()) cof[j] = cof[j] + d.quotients[b] * c;
    }
  }
  return cof;
}

bool ideal_contains(const Ideal& outer, const Ideal& inner, const GroebnerOptions& opts) {
  require_same_ring(outer.ring(), inner.ring());
  for (const auto& g : inner.generators())
    if (!ideal_member(g, outer, opts)) return false;
  return true;
}

bool replay_cofactors(const Polynomial& p, std::span<const Polynomial> generators,
                      std::span<const Polynomial> cofactors) {
  if (generators.size() != cofactors.size()) return false;
  Polynomial sum(p.ring());
  for (std::size_t j = 0; j < generators.size(); ++j) sum = sum + cofactors[j] * generators[j];
  return sum == p;
}

}  // namespace lipeq
