#include "lipeq/curve.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <limits>

namespace lipeq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

using i128 = __int128;

// A polynomial prepared for monomial curves: integer coefficients (the
// polynomial scaled by a positive integer, which leaves orders unchanged)
// and sparse exponent lists.
struct CompiledPoly {
  struct Term {
    std::vector<std::pair<std::uint16_t, std::uint16_t>> factors;
    std::int64_t coeff;
  };
  bool exact = true;
  std::vector<Term> terms;
};

CompiledPoly compile(const Polynomial& p) {
  CompiledPoly out;
  Integer den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    const Rational scaled = t.coeff * den;
    const Integer num = scaled.get_num();
    if (!num.fits_slong_p()) {
      out.exact = false;
      return out;
    }
    CompiledPoly::Term ct;
    ct.coeff = num.get_si();
    for (std::size_t v = 0; v < t.mono.size(); ++v)
      if (t.mono[v]) ct.factors.emplace_back(static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(t.mono[v]));
    out.terms.push_back(std::move(ct));
  }
  return out;
}

// Order of phi*(p) for phi = (c_v s^{e_v}); nullopt on 128-bit overflow.
std::optional<Valuation> monomial_order(const CompiledPoly& p, const std::vector<int>& exps,
                                        const std::vector<std::int64_t>& coefs,
                                        std::vector<std::pair<long, i128>>& buf) {
  buf.clear();
  for (const auto& t : p.terms) {
    long deg = 0;
    i128 val = t.coeff;
    for (const auto& [v, e] : t.factors) {
      deg += static_cast<long>(e) * exps[v];
      for (unsigned k = 0; k < e; ++k)
        if (__builtin_mul_overflow(val, static_cast<i128>(coefs[v]), &val)) return std::nullopt;
    }
    buf.emplace_back(deg, val);
  }
  std::sort(buf.begin(), buf.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t i = 0;
  while (i < buf.size()) {
    i128 sum = 0;
    std::size_t j = i;
    for (; j < buf.size() && buf[j].first == buf[i].first; ++j)
      if (__builtin_add_overflow(sum, buf[j].second, &sum)) return std::nullopt;
    if (sum != 0) return Valuation::finite(static_cast<int>(buf[i].first));
    i = j;
  }
  return Valuation::infinite();
}

struct CurveOutcome {
  bool witness = false;
  std::uint32_t element = 0;
  int gap = INT_MAX;
};

void fold_gap(int& gap, const Valuation& h, const Valuation& m) {
  if (!h.is_infinite() && !m.is_infinite()) gap = std::min(gap, h.value() - m.value());
}

CurveOutcome general_outcome(const TestCurve& curve, std::span<const Polynomial> elements,
                             const Ideal& ideal) {
  CurveOutcome out;
  const PullbackSummary sum = pullback_ideal(curve, ideal);
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (elements[e].is_zero()) continue;
    const Valuation oh = order_of_vanishing(pull_back(elements[e], curve));
    fold_gap(out.gap, oh, sum.ideal_order);
    if (oh < sum.ideal_order && !out.witness) {
      out.witness = true;
      out.element = static_cast<std::uint32_t>(e);
    }
  }
  return out;
}

class Evaluator {
 public:
  Evaluator(std::span<const Polynomial> elements, const Ideal& ideal,
            const CurveSearchConfig& config)
      : elements_(elements), ideal_(ideal) {
    fast_ = true;
    for (const auto& c : config.coefficients) {
      if (c.get_den() != 1 || !c.get_num().fits_slong_p()) fast_ = false;
    }
    for (const auto& g : ideal.generators()) {
      gens_.push_back(compile(g));
      fast_ = fast_ && gens_.back().exact;
    }
    for (const auto& h : elements) {
      elems_.push_back(compile(h));
      fast_ = fast_ && elems_.back().exact;
    }
  }

  CurveOutcome evaluate(const MonomialCurve& c) const {
    if (fast_) {
      if (auto r = fast(c)) return *r;
    }
    return general_outcome(c.to_test_curve(ideal_.ring()), elements_, ideal_);
  }

 private:
  std::optional<CurveOutcome> fast(const MonomialCurve& c) const {
    std::vector<std::int64_t> coefs;
    coefs.reserve(c.coefficients.size());
    for (const auto& q : c.coefficients) coefs.push_back(q.get_num().get_si());
    std::vector<std::pair<long, i128>> buf;
    Valuation m = Valuation::infinite();
    for (const auto& g : gens_) {
      auto o = monomial_order(g, c.exponents, coefs, buf);
      if (!o) return std::nullopt;
      m = std::min(m, *o);
    }
    CurveOutcome out;
    for (std::size_t e = 0; e < elems_.size(); ++e) {
      if (elems_[e].terms.empty()) continue;
      auto o = monomial_order(elems_[e], c.exponents, coefs, buf);
      if (!o) return std::nullopt;
      fold_gap(out.gap, *o, m);
      if (*o < m && !out.witness) {
        out.witness = true;
        out.element = static_cast<std::uint32_t>(e);
      }
    }
    return out;
  }

  std::span<const Polynomial> elements_;
  const Ideal& ideal_;
  bool fast_;
  std::vector<CompiledPoly> gens_;
  std::vector<CompiledPoly> elems_;
};

ClosureResult finish(std::span<const Polynomial> elements, const Ideal& ideal,
                     const TestCurve& curve, std::size_t element, SearchReport report) {
  auto w = curve_obstruction(curve, elements[element], ideal);
  if (!w) throw Error("internal: curve kernels disagree on a witness");
  ClosureResult r;
  r.witness = std::move(w);
  r.element_index = element;
  r.report = report;
  return r;
}

void fold_report(SearchReport& rep, const CurveOutcome& o) {
  ++rep.curves_tried;
  if (o.gap != INT_MAX) rep.min_gap = rep.min_gap ? std::min(*rep.min_gap, o.gap) : o.gap;
}

constexpr std::size_t kChunk = 4096;

}  // namespace

TestCurve::TestCurve(RingPtr ring, std::vector<UnivariatePoly> components)
    : ring_(std::move(ring)), components_(std::move(components)) {
  if (components_.size() != ring_->size())
    throw ShapeMismatch("curve has " + std::to_string(components_.size()) +
                        " components for a ring of " + std::to_string(ring_->size()) +
                        " variables");
  for (const auto& c : components_)
    if (c.constant_term() != 0) throw Error("curve component " + c.to_string() + " does not vanish at 0");
}

TestCurve TestCurve::parse(std::string_view text, RingPtr ring) {
  std::vector<UnivariatePoly> comps;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = text.find(',', start);
    comps.push_back(UnivariatePoly::parse(trim(text.substr(start, p == std::string_view::npos ? p : p - start))));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return TestCurve(std::move(ring), std::move(comps));
}

std::string TestCurve::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string();
  }
  return out;
}

UnivariatePoly pull_back(const Polynomial& p, const TestCurve& curve) {
  require_same_ring(p.ring(), curve.ring());
  const std::size_t n = curve.ring()->size();
  std::vector<std::vector<UnivariatePoly>> powers(n, {UnivariatePoly::monomial(1, 0)});
  auto power = [&](std::size_t v, unsigned e) -> const UnivariatePoly& {
    auto& pw = powers[v];
    while (pw.size() <= e) pw.push_back(pw.back() * curve.components()[v]);
    return pw[e];
  };
  UnivariatePoly sum;
  for (const auto& t : p.terms()) {
    UnivariatePoly prod = UnivariatePoly::monomial(t.coeff, 0);
    for (std::size_t v = 0; v < n && !prod.is_zero(); ++v)
      if (t.mono[v]) prod = prod * power(v, t.mono[v]);
    sum = sum + prod;
  }
  return sum;
}

PullbackSummary pullback_ideal(const TestCurve& curve, const Ideal& ideal) {
  require_same_ring(curve.ring(), ideal.ring());
  PullbackSummary out;
  for (const auto& g : ideal.generators()) {
    out.generators.push_back(g);
    out.pullbacks.push_back(pull_back(g, curve));
    out.orders.push_back(order_of_vanishing(out.pullbacks.back()));
    out.ideal_order = std::min(out.ideal_order, out.orders.back());
  }
  return out;
}

std::optional<Witness> curve_obstruction(const TestCurve& curve, const Polynomial& h,
                                         const Ideal& ideal) {
  require_same_ring(curve.ring(), h.ring());
  const PullbackSummary sum = pullback_ideal(curve, ideal);
  UnivariatePoly ph = pull_back(h, curve);
  const Valuation oh = order_of_vanishing(ph);
  if (!(oh < sum.ideal_order)) return std::nullopt;
  std::optional<int> margin;
  if (!sum.ideal_order.is_infinite()) margin = sum.ideal_order.value() - oh.value();
  return Witness{curve, h, std::move(ph), oh, sum.ideal_order, margin};
}

WitnessReplay replay_witness(const Witness& w, const Ideal& ideal) {
  const RingPtr s_ring = RingContext::make({"s"}, MonomialOrder::GradedReverseLex, false, 30000);
  std::vector<Polynomial> images;
  for (const auto& c : w.curve.components()) {
    std::vector<Term> terms;
    for (int d = 0; d <= c.degree(); ++d) {
      if (c.coefficient(d) == 0) continue;
      Monomial m(1);
      m.set(0, static_cast<unsigned>(d));
      terms.push_back({std::move(m), c.coefficient(d)});
    }
    images.push_back(Polynomial::from_terms(s_ring, std::move(terms)));
  }
  auto order = [&](const Polynomial& p) {
    const Polynomial q = substitute(p, images);
    if (q.is_zero()) return Valuation::infinite();
    return Valuation::finite(q.low_degree());
  };
  WitnessReplay r{order(w.element), Valuation::infinite(), false};
  for (const auto& g : ideal.generators()) r.ideal_order = std::min(r.ideal_order, order(g));
  r.confirmed = r.element_order == w.element_order && r.ideal_order == w.ideal_order &&
                r.element_order < r.ideal_order;
  return r;
}

int MonomialCurve::total_degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

TestCurve MonomialCurve::to_test_curve(const RingPtr& ring) const {
  std::vector<UnivariatePoly> comps;
  for (std::size_t v = 0; v < exponents.size(); ++v)
    comps.push_back(UnivariatePoly::monomial(coefficients[v], exponents[v]));
  return TestCurve(ring, std::move(comps));
}

CurveStream::CurveStream(RingPtr ring, CurveSearchConfig config)
    : ring_(std::move(ring)), config_(std::move(config)) {
  if (config_.max_exponent < 1) throw Error("curve search needs max_exponent >= 1");
  if (config_.coefficients.empty()) throw Error("curve search needs a nonempty coefficient set");
  for (const auto& c : config_.coefficients)
    if (c == 0) throw Error("curve coefficients must be nonzero");
  std::sort(config_.coefficients.begin(), config_.coefficients.end());
  config_.coefficients.erase(std::unique(config_.coefficients.begin(), config_.coefficients.end()),
                             config_.coefficients.end());
  tied_ = std::numeric_limits<std::size_t>::max();
  if (config_.share_parameter && ring_->doubled()) tied_ = ring_->half();
  for (std::size_t v = 0; v < ring_->size(); ++v) {
    if (v == tied_) continue;
    free_vars_.push_back(v);
    weights_.push_back(v == 0 && tied_ != std::numeric_limits<std::size_t>::max() ? 2 : 1);
  }
  reset();
}

void CurveStream::reset() {
  int w = 0;
  for (int x : weights_) w += x;
  level_ = w - 1;
  max_level_ = w * config_.max_exponent;
  level_exps_.clear();
  exp_pos_ = 0;
  coeff_started_ = false;
}

std::size_t CurveStream::size() const {
  std::size_t n = 1;
  const std::size_t per = static_cast<std::size_t>(config_.max_exponent) * config_.coefficients.size();
  for (std::size_t i = 0; i < free_vars_.size(); ++i) n *= per;
  return n;
}

void CurveStream::load_level() {
  level_exps_.clear();
  exp_pos_ = 0;
  coeff_started_ = false;
  const std::size_t nf = free_vars_.size();
  std::vector<int> rest_weight(nf + 1, 0);
  for (std::size_t i = nf; i-- > 0;) rest_weight[i] = rest_weight[i + 1] + weights_[i];
  const int M = config_.max_exponent;
  std::vector<int> cur(nf, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == nf) {
      if (remaining == 0) level_exps_.push_back(cur);
      return;
    }
    for (int e = 1; e <= M; ++e) {
      const int left = remaining - weights_[i] * e;
      if (left < rest_weight[i + 1]) break;
      if (left > M * rest_weight[i + 1]) continue;
      cur[i] = e;
      self(self, i + 1, left);
    }
  };
  rec(rec, 0, level_);
}

MonomialCurve CurveStream::expand(const std::vector<int>& free_exps,
                                  const std::vector<std::size_t>& coeff_idx) const {
  MonomialCurve c;
  c.exponents.assign(ring_->size(), 0);
  c.coefficients.assign(ring_->size(), Rational(0));
  for (std::size_t i = 0; i < free_vars_.size(); ++i) {
    c.exponents[free_vars_[i]] = free_exps[i];
    c.coefficients[free_vars_[i]] = config_.coefficients[coeff_idx[i]];
  }
  if (tied_ != std::numeric_limits<std::size_t>::max()) {
    c.exponents[tied_] = c.exponents[0];
    c.coefficients[tied_] = c.coefficients[0];
  }
  return c;
}

std::optional<MonomialCurve> CurveStream::next() {
  const std::size_t nf = free_vars_.size();
  const std::size_t nc = config_.coefficients.size();
  for (;;) {
    if (exp_pos_ < level_exps_.size()) {
      if (!coeff_started_) {
        coeff_idx_.assign(nf, 0);
        coeff_started_ = true;
        return expand(level_exps_[exp_pos_], coeff_idx_);
      }
      for (std::size_t i = nf; i-- > 0;) {
        if (++coeff_idx_[i] < nc) return expand(level_exps_[exp_pos_], coeff_idx_);
        coeff_idx_[i] = 0;
      }
      ++exp_pos_;
      coeff_started_ = false;
      continue;
    }
    if (level_ >= max_level_) return std::nullopt;
    ++level_;
    load_level();
  }
}

std::vector<TestCurve> enumerate_test_curves(const RingPtr& ring, const CurveSearchConfig& config,
                                             std::size_t limit) {
  CurveStream stream(ring, config);
  std::vector<TestCurve> out;
  while (out.size() < limit) {
    auto c = stream.next();
    if (!c) break;
    out.push_back(c->to_test_curve(ring));
  }
  return out;
}

ClosureResult closure_test(std::span<const Polynomial> elements, const Ideal& ideal,
                           const CurveSearchConfig& config, std::size_t budget, Execution mode) {
  for (const auto& h : elements) require_same_ring(h.ring(), ideal.ring());
  CurveStream stream(ideal.ring(), config);
  const Evaluator eval(elements, ideal, config);
  SearchReport rep;
  rep.budget = budget;

  if (mode == Execution::Serial) {
    while (rep.curves_tried < budget) {
      auto c = stream.next();
      if (!c) {
        rep.stream_exhausted = true;
        break;
      }
      const CurveOutcome o = eval.evaluate(*c);
      fold_report(rep, o);
      if (o.witness) return finish(elements, ideal, c->to_test_curve(ideal.ring()), o.element, rep);
    }
    return ClosureResult{std::nullopt, 0, rep};
  }

  std::vector<MonomialCurve> chunk;
  std::vector<CurveOutcome> outcomes;
  while (rep.curves_tried < budget) {
    chunk.clear();
    const std::size_t want = std::min(kChunk, budget - rep.curves_tried);
    while (chunk.size() < want) {
      auto c = stream.next();
      if (!c) break;
      chunk.push_back(std::move(*c));
    }
    const bool ended = chunk.size() < want;
    outcomes.assign(chunk.size(), CurveOutcome{});
    const long n = static_cast<long>(chunk.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) outcomes[static_cast<std::size_t>(i)] = eval.evaluate(chunk[static_cast<std::size_t>(i)]);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      fold_report(rep, outcomes[i]);
      if (outcomes[i].witness)
        return finish(elements, ideal, chunk[i].to_test_curve(ideal.ring()), outcomes[i].element, rep);
    }
    if (ended) {
      rep.stream_exhausted = true;
      break;
    }
  }
  return ClosureResult{std::nullopt, 0, rep};
}

ClosureResult closure_test(const Polynomial& h, const Ideal& ideal,
                           const CurveSearchConfig& config, std::size_t budget, Execution mode) {
  return closure_test(std::span<const Polynomial>(&h, 1), ideal, config, budget, mode);
}

ClosureResult closure_test(std::span<const Polynomial> elements, const Ideal& ideal,
                           std::span<const TestCurve> curves) {
  SearchReport rep;
  rep.budget = curves.size();
  for (const auto& c : curves) {
    const CurveOutcome o = general_outcome(c, elements, ideal);
    fold_report(rep, o);
    if (o.witness) return finish(elements, ideal, c, o.element, rep);
  }
  rep.stream_exhausted = true;
  return ClosureResult{std::nullopt, 0, rep};
}

}  // namespace lipeq
