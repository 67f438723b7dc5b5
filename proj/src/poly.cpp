#include "lipeq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lipeq {

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (seen_slash ? digits_after : digits_before) = true;
    } else {
      throw ParseError("malformed rational '" + s + "'");
    }
  }
  if (!digits_before || (seen_slash && !digits_after))
    throw ParseError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Rings

RingContext::RingContext(Token, std::vector<std::string> names, MonomialOrder order,
                         bool doubled, int exponent_cap)
    : names_(std::move(names)), order_(order), doubled_(doubled), exponent_cap_(exponent_cap) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error("empty variable name");
    if (!index_.emplace(names_[i], i).second)
      throw Error("duplicate variable name '" + names_[i] + "'");
  }
  if (exponent_cap_ < 1 || exponent_cap_ > 30000) throw Error("exponent cap out of range");
  if (doubled_) {
    if (names_.size() % 2 != 0) throw Error("doubled ring needs an even number of variables");
    const std::size_t h = names_.size() / 2;
    for (std::size_t i = 0; i < h; ++i) {
      if (names_[h + i] != names_[i] + "'")
        throw Error("doubled ring: '" + names_[h + i] + "' is not the primed copy of '" +
                    names_[i] + "'");
    }
  }
}

RingPtr RingContext::make(std::vector<std::string> names, MonomialOrder order, bool doubled,
                          int exponent_cap) {
  return std::make_shared<const RingContext>(Token{}, std::move(names), order, doubled,
                                             exponent_cap);
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RingContext::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw UnknownVariable(std::string(name));
  return *i;
}

RingPtr RingContext::doubled_extension() const {
  if (doubled_) throw Error("ring is already doubled; no doubled extension registered");
  for (const auto& n : names_)
    if (n.find('\'') != std::string::npos)
      throw Error("ring uses primed name '" + n + "'; no doubled extension registered");
  std::call_once(doubled_once_, [this] {
    std::vector<std::string> names = names_;
    for (const auto& n : names_) names.push_back(n + "'");
    doubled_ext_ = make(std::move(names), order_, true, exponent_cap_);
  });
  return doubled_ext_;
}

RingPtr RingContext::with_order(MonomialOrder order) const {
  return make(names_, order, doubled_, exponent_cap_);
}

bool RingContext::same_as(const RingContext& other) const {
  return this == &other || (names_ == other.names_ && order_ == other.order_ &&
                            doubled_ == other.doubled_ && exponent_cap_ == other.exponent_cap_);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw RingMismatch();
}

// ---------------------------------------------------------------------------
// Monomials

Monomial::Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

void Monomial::set(std::size_t i, unsigned e) {
  degree_ += static_cast<int>(e) - exps_[i];
  exps_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i)
    r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] + b.exps_[i]);
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i)
    r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] - b.exps_[i]);
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.set(i, std::max(a.exps_[i], b.exps_[i]));
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.exps_[i] && b.exps_[i]) return false;
  return true;
}

int Monomial::max_exponent() const {
  int m = 0;
  for (auto e : exps_) m = std::max<int>(m, e);
  return m;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  const std::size_t n = a.size();
  if (order == MonomialOrder::GradedReverseLex) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

void check_cap(const RingPtr& ring, const Monomial& m) {
  if (m.max_exponent() > ring->exponent_cap())
    throw ExponentOverflow("exponent " + std::to_string(m.max_exponent()) + " exceeds cap " +
                           std::to_string(ring->exponent_cap()));
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.push_back({Monomial(ring->size()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw Error("variable index out of range");
  Monomial m(ring->size());
  m.set(index, 1);
  return monomial(std::move(ring), std::move(m));
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const std::size_t i = ring->require_index(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, const Rational& c) {
  if (m.size() != ring->size()) throw Error("monomial arity does not match ring");
  check_cap(ring, m);
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const MonomialOrder ord = ring->order();
  for (const auto& t : terms) {
    if (t.mono.size() != ring->size()) throw Error("monomial arity does not match ring");
    check_cap(ring, t.mono);
  }
  std::sort(terms.begin(), terms.end(),
            [ord](const Term& a, const Term& b) { return compare(a.mono, b.mono, ord) > 0; });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

int Polynomial::low_degree() const {
  if (terms_.empty()) return -1;
  int d = terms_[0].mono.degree();
  for (const auto& t : terms_) d = std::min(d, t.mono.degree());
  return d;
}

Rational Polynomial::constant_term() const {
  for (const auto& t : terms_)
    if (t.mono.is_one()) return t.coeff;
  return 0;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial r(ring_);
  for (const auto& t : terms_)
    if (t.mono.degree() == degree) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::truncated(int max_degree) const {
  Polynomial r(ring_);
  for (const auto& t : terms_)
    if (t.mono.degree() <= max_degree) r.terms_.push_back(t);
  return r;
}

bool Polynomial::uses_variable(std::size_t index) const {
  for (const auto& t : terms_)
    if (t.mono[index] != 0) return true;
  return false;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merges a + sign*b for sorted term lists.
std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, bool subtract,
                              MonomialOrder ord) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i].mono, b[j].mono, ord);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().coeff = -out.back().coeff;
  }
  return out;
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  Polynomial r(a.ring_);
  r.terms_ = merge_terms(a.terms_, b.terms_, false, a.ring_->order());
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  Polynomial r(a.ring_);
  r.terms_ = merge_terms(a.terms_, b.terms_, true, a.ring_->order());
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(a.ring_, std::move(prod));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  for (const auto& t : r.terms_) check_cap(ring_, t.mono);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading_coeff());
}

void Polynomial::sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& other) {
  require_same_ring(ring_, other.ring_);
  if (c == 0 || other.is_zero()) return;
  std::vector<Term> shifted;
  shifted.reserve(other.terms_.size());
  for (const auto& t : other.terms_) {
    shifted.push_back({t.mono * m, t.coeff * c});
    check_cap(ring_, shifted.back().mono);
  }
  terms_ = merge_terms(terms_, shifted, true, ring_->order());
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    std::string factors;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += ring_->name(i);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      Term t = term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') error("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) +
                     "'");
  }

  std::string digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += text_[pos_++];
    return d;
  }

  Term term() {
    skip_ws();
    Rational coeff = 1;
    bool have_coeff = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        std::string den = digits();
        if (den.empty()) error("expected denominator");
        num += "/" + den;
      }
      coeff = parse_rational(num);
      have_coeff = true;
    }
    Monomial m(ring_->size());
    bool have_factor = false;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !is_ident_start(peek())) error("expected variable after '*'");
      }
      if (!is_ident_start(peek())) break;
      const std::size_t var = variable();
      unsigned e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        std::string d = digits();
        if (d.empty() || (!at_end() && (peek() == '.' || peek() == '/')))
          error("non-integer exponent");
        if (d.size() > 6) throw ExponentOverflow("exponent too large: " + d);
        e = static_cast<unsigned>(std::stoul(d));
      }
      const unsigned total = m[var] + e;
      if (static_cast<int>(total) > ring_->exponent_cap())
        throw ExponentOverflow("exponent " + std::to_string(total) + " exceeds cap " +
                               std::to_string(ring_->exponent_cap()));
      m.set(var, total);
      have_factor = true;
    }
    if (!have_coeff && !have_factor) error("expected a term");
    return Term{std::move(m), coeff};
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  // Longest ring variable name matching at the cursor, so that "xy" reads as
  // x*y and "x'" as the primed variable.
  std::size_t variable() {
    const std::string_view rest = text_.substr(pos_);
    std::optional<std::size_t> best;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      const std::string& n = ring_->name(i);
      if (n.size() > best_len && rest.substr(0, n.size()) == n) {
        best = i;
        best_len = n.size();
      }
    }
    if (!best) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_' ||
              text_[end] == '\''))
        ++end;
      throw UnknownVariable(std::string(text_.substr(pos_, end - pos_)));
    }
    pos_ += best_len;
    return *best;
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, RingPtr ring) {
  return PolyParser(text, std::move(ring)).parse();
}

Polynomial poly_parse(std::string_view text, const RingPtr& ring) {
  return Polynomial::parse(text, ring);
}

Polynomial poly_arith(ArithOp op, const Polynomial& a, const Polynomial& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw Error("unknown arithmetic op");
}

Polynomial poly_scale(const Rational& c, const Polynomial& p) { return p.scaled(c); }

// ---------------------------------------------------------------------------
// Substitution, differentiation, embedding

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  const RingPtr& src = p.ring();
  if (images.size() != src->size())
    throw Error("substitution needs one image per variable (" + std::to_string(src->size()) +
                "), got " + std::to_string(images.size()));
  if (images.empty()) throw Error("cannot substitute into a ring without variables");
  const RingPtr& target = images[0].ring();
  for (const auto& img : images)
    if (!same_ring(img.ring(), target)) throw RingMismatch("substitution images use different rings");

  // powers[v][e] = images[v]^e, filled on demand
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(Polynomial::constant(target, 1));
    while (pv.size() <= e) pv.push_back(pv.back() * images[v]);
    return pv[e];
  };

  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial acc = Polynomial::constant(target, t.coeff);
    for (std::size_t v = 0; v < t.mono.size() && !acc.is_zero(); ++v)
      if (t.mono[v]) acc = acc * power(v, t.mono[v]);
    result = result + acc;
  }
  return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignment) {
  std::vector<Polynomial> images;
  images.reserve(p.ring()->size());
  for (const auto& name : p.ring()->names()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw Error("substitution has no image for variable '" + name + "'");
    images.push_back(it->second);
  }
  return substitute(p, images);
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring()->size()) throw Error("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({std::move(m), t.coeff * e});
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  return partial_derivative(p, p.ring()->require_index(var));
}

Polynomial embed(const Polynomial& p, const RingPtr& target) {
  if (same_ring(p.ring(), target)) return Polynomial::from_terms(target, {p.terms().begin(), p.terms().end()});
  std::vector<std::size_t> map;
  map.reserve(p.ring()->size());
  for (const auto& n : p.ring()->names()) map.push_back(target->require_index(n));
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < map.size(); ++i) m.set(map[i], t.mono[i]);
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Univariate

std::string Valuation::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(*value_);
}

UnivariatePoly::UnivariatePoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void UnivariatePoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UnivariatePoly UnivariatePoly::monomial(const Rational& c, int degree) {
  if (degree < 0) throw Error("negative degree");
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::from_polynomial(const Polynomial& p) {
  if (p.ring()->size() != 1) throw Error("univariate conversion needs a one-variable ring");
  std::vector<Rational> v(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1);
  for (const auto& t : p.terms()) v[t.mono[0]] = t.coeff;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::parse(std::string_view text, std::string_view var) {
  // exponents of a curve component may exceed the multivariate cap
  auto ring = RingContext::make({std::string(var)}, MonomialOrder::GradedReverseLex, false, 30000);
  return from_polynomial(Polynomial::parse(text, ring));
}

Rational UnivariatePoly::coefficient(int d) const {
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(d)];
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return UnivariatePoly(std::move(v));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
  return a + b.scaled(-1);
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::scaled(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& x : v) x *= c;
  return UnivariatePoly(std::move(v));
}

bool UnivariatePoly::is_monomial() const {
  return std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; }) ==
         1;
}

std::string UnivariatePoly::to_string(std::string_view var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    const Rational& c = coeffs_[d];
    if (c == 0) continue;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    if (d == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str();
    out += var;
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

Valuation order_of_vanishing(const UnivariatePoly& p) {
  const auto& c = p.coefficients();
  for (std::size_t d = 0; d < c.size(); ++d)
    if (c[d] != 0) return Valuation::finite(static_cast<int>(d));
  return Valuation::infinite();
}

}  // namespace lipeq
