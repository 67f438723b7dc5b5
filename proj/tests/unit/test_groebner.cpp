#include <doctest.h>

#include "lipeq/analyzer.hpp"
#include "lipeq/double.hpp"
#include "lipeq/groebner.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace lipeq;
using testing::random_poly;

namespace {

RingPtr doubled_txy() { return RingContext::make({"t", "x", "y"})->doubled_extension(); }

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const RingPtr& R) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(Polynomial::parse(t, R));
  return out;
}

Ideal ideal(const std::vector<std::string>& texts, const RingPtr& R) { return Ideal(R, parse_all(texts, R)); }

// Reduced: monic, no leading monomial divides another term of the basis.
bool is_reduced(const GroebnerBasis& gb) {
  const auto B = gb.polynomials();
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (B[i].leading_coeff() != 1) return false;
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : B[j].terms())
        if (B[i].leading_monomial().divides(t.mono)) return false;
    }
  }
  return true;
}

struct RandomIdeal {
  RingPtr ring;
  std::vector<Polynomial> gens;
};

RandomIdeal random_ideal(std::mt19937_64& rng, int index) {
  static const std::vector<std::vector<std::string>> names{{"x"}, {"x", "y"}, {"x", "y", "z"}};
  const auto& vars = names[static_cast<std::size_t>(index % 3)];
  RandomIdeal r{RingContext::make(vars), {}};
  std::uniform_int_distribution<int> ngens(1, 3);
  const int m = ngens(rng);
  while (static_cast<int>(r.gens.size()) < m) {
    Polynomial g = random_poly(rng, r.ring, 3, 3);
    if (!g.is_zero()) r.gens.push_back(std::move(g));
  }
  return r;
}

}  // namespace

TEST_CASE("reduce examples") {
  const auto D = doubled_txy();
  const auto B = parse_all({"x - x'"}, D);
  CHECK(reduce(Polynomial::parse("x^2 - x'^2", D), B).is_zero());
  CHECK(reduce(Polynomial::parse("x - x' + x^2 - x'^2", D), B).is_zero());
  const auto R = RingContext::make({"x", "y"});
  CHECK(reduce(Polynomial::parse("y", R), parse_all({"x"}, R)) == Polynomial::parse("y", R));
}

TEST_CASE("division identity and remainder condition") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto I = random_ideal(rng, i);
    const Polynomial p = random_poly(rng, I.ring, 4, 6);
    const Division d = divide(p, I.gens);
    Polynomial sum = d.remainder;
    for (std::size_t j = 0; j < I.gens.size(); ++j) sum = sum + d.quotients[j] * I.gens[j];
    CHECK(sum == p);
    for (const auto& t : d.remainder.terms())
      for (const auto& g : I.gens) CHECK_FALSE(g.leading_monomial().divides(t.mono));
  }
}

TEST_CASE("buchberger examples") {
  const auto R = RingContext::make({"x", "y"});
  const GroebnerBasis xy = buchberger(ideal({"x", "y"}, R));
  CHECK(xy.polynomials().size() == 2);

  const auto D = doubled_txy();
  const GroebnerBasis lin = buchberger(ideal({"x - x'", "x^2 - x'^2"}, D));
  REQUIRE(lin.polynomials().size() == 1);
  CHECK(lin.polynomials()[0] == Polynomial::parse("x - x'", D));

  const Ideal e6 = ideal({"y^2 - y'^2", "x - x' + t*y^2 - t*y'^2"}, D);
  const GroebnerBasis gb = buchberger(e6);
  CHECK(reduce(Polynomial::parse("y^2 - y'^2", D), gb.polynomials()).is_zero());
  CHECK(reduce(Polynomial::parse("x - x'", D), gb.polynomials()).is_zero());
}

TEST_CASE("basis of the unit ideal is {1}") {
  const auto R = RingContext::make({"x", "y"});
  const GroebnerBasis gb = buchberger(ideal({"x*y - 1", "x"}, R));
  REQUIRE(gb.polynomials().size() == 1);
  CHECK(gb.polynomials()[0] == Polynomial::parse("1", R));
}

TEST_CASE("lex basis eliminates") {
  const auto L = RingContext::make({"x", "y"}, MonomialOrder::Lex);
  const GroebnerBasis gb = buchberger(ideal({"x^2 - y", "x*y - 1"}, L));
  // the smallest element lives in k[y] alone
  const Polynomial& last = gb.polynomials()[0];
  CHECK_FALSE(last.uses_variable(0));
  CHECK(last == Polynomial::parse("y^3 - 1", L));
}

TEST_CASE("membership examples") {
  const auto D = doubled_txy();
  const NormalForm e6 = NormalForm::catalog(5);
  const Unfolding U = build_unfolding(e6.matrix(), theta_from_coefficients(e6, {{"a1", 1}, {"a2", 2}}));
  const DoubledIdeal IF = unfolding_ideal(U);
  CHECK(ideal_member(Polynomial::parse("y^2 - y'^2", IF.ideal.ring()), IF.ideal));

  const auto R = RingContext::make({"x", "y"});
  CHECK_FALSE(ideal_member(Polynomial::parse("y", R), ideal({"x"}, R)));
  CHECK(ideal_member(Polynomial::parse("x^3 - x'^3", D), ideal({"x - x'"}, D)));
  CHECK(ideal_member(Polynomial(D), ideal({"x - x'"}, D)));
  CHECK_FALSE(ideal_member(Polynomial::parse("x", D), Ideal::zero(D)));
}

TEST_CASE("inclusion examples") {
  const NormalForm nf = NormalForm::catalog(4, 2);
  const Unfolding U = build_unfolding(nf.matrix(), theta_from_coefficients(nf, {{"b1", 1}}));
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal It = direction_ideal(U);
  CHECK(ideal_contains(IF.ideal, It.ideal));
  CHECK(ideal_member(Polynomial::parse("x - x'", IF.ideal.ring()), IF.ideal));

  const auto R = RingContext::make({"x", "y"});
  CHECK(ideal_contains(ideal({"x"}, R), Ideal::zero(R)));
  CHECK(ideal_contains(Ideal::zero(R), Ideal::zero(R)));
  CHECK_FALSE(ideal_contains(ideal({"x"}, R), ideal({"y"}, R)));
}

TEST_CASE("membership cofactors recombine") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 500; ++i) {
    const auto I = random_ideal(rng, i);
    const Ideal J(I.ring, I.gens);
    Polynomial p(I.ring);
    for (const auto& g : I.gens) p = p + random_poly(rng, I.ring, 2, 3) * g;
    const auto cof = membership_cofactors(p, J);
    REQUIRE(cof.has_value());
    CHECK(replay_cofactors(p, J.generators(), *cof));
  }
}

TEST_CASE("basis is a reduced fixed point and deterministic") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const auto I = random_ideal(rng, i);
    const GroebnerBasis a = buchberger(Ideal(I.ring, I.gens));
    const GroebnerBasis b = buchberger(Ideal(I.ring, I.gens));
    CHECK(a.to_string() == b.to_string());
    CHECK(is_reduced(a));
    for (const auto& g : I.gens) CHECK(reduce(g, a.polynomials()).is_zero());
    REQUIRE(a.has_cofactors());
    for (std::size_t k = 0; k < a.polynomials().size(); ++k)
      CHECK(replay_cofactors(a.polynomials()[k], a.generators(), a.cofactors(k)));
  }
}

TEST_CASE("ideal_member agrees with the brute-force cofactor oracle") {
  std::mt19937_64 rng(24);
  int certified = 0;
  int disagreements = 0;
  for (int i = 0; i < 240; ++i) {
    const auto I = random_ideal(rng, i);
    const Ideal J(I.ring, I.gens);
    Polynomial p = random_poly(rng, I.ring, 3, 3);
    if (i % 2 == 0) {
      p = Polynomial(I.ring);
      for (const auto& g : I.gens) p = p + random_poly(rng, I.ring, 1, 2) * g;
    }
    int gdeg = 0;
    for (const auto& g : I.gens) gdeg = std::max(gdeg, g.total_degree());
    const int cap = std::max(p.total_degree(), 0) + gdeg + 2;
    if (testing::brute_force_member(p, I.gens, cap)) {
      ++certified;
      if (!ideal_member(p, J)) ++disagreements;
    }
  }
  CHECK(certified >= 120);
  CHECK(disagreements == 0);
}

TEST_CASE("budgets raise BudgetExceeded") {
  const auto R = RingContext::make({"x", "y", "z"});
  GroebnerOptions tight;
  tight.max_pairs = 1;
  const Ideal I = ideal({"x^2*y - z^3 + 1", "x*y^2 - z", "y*z^2 - x"}, R);
  CHECK_THROWS_AS(buchberger(I, tight), BudgetExceeded);
  GroebnerOptions low_degree;
  low_degree.max_degree = 3;
  // the reduced basis of this ideal reaches degree 4
  const Ideal grows = ideal({"x^2 - y", "x*y - z^2"}, R);
  CHECK_THROWS_AS(buchberger(grows, low_degree), BudgetExceeded);
  low_degree.max_degree = 4;
  CHECK_NOTHROW(buchberger(grows, low_degree));
}

TEST_CASE("basis cache survives option changes") {
  const auto R = RingContext::make({"x", "y"});
  const Ideal I = ideal({"x^2 - y", "x*y"}, R);
  GroebnerOptions plain;
  plain.track_cofactors = false;
  const GroebnerBasis& first = I.basis(plain);
  const std::string before = first.to_string();
  const GroebnerBasis& second = I.basis();
  CHECK(second.has_cofactors());
  CHECK(first.to_string() == before);
  CHECK(second.to_string() == before);
}
