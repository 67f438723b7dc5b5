#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "lipeq/analyzer.hpp"
#include "lipeq/curve.hpp"
#include "test_support.hpp"

using namespace lipeq;
using testing::random_poly;

namespace {

RingPtr doubled_txy() { return RingContext::make({"t", "x", "y"})->doubled_extension(); }

struct CatalogIdeals {
  Unfolding unfolding;
  DoubledIdeal unfolding_ideal;
  DoubledIdeal direction_ideal;
};

CatalogIdeals catalog_ideals(int row, int k, int l, const Coefficients& c) {
  const NormalForm nf = NormalForm::catalog(row, k, l);
  Unfolding U = build_unfolding(nf.matrix(), theta_from_coefficients(nf, c));
  DoubledIdeal IF = unfolding_ideal(U);
  DoubledIdeal It = direction_ideal(U);
  return {std::move(U), std::move(IF), std::move(It)};
}

// Every curve of the stream, built by nested loops and sorted by
// (weighted degree, exponents, coefficients).
std::vector<std::string> brute_force_stream(const RingPtr& ring, const CurveSearchConfig& cfg) {
  const bool tie = cfg.share_parameter && ring->doubled();
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < ring->size(); ++v)
    if (!(tie && v == ring->half())) free.push_back(v);
  std::vector<Rational> coeffs = cfg.coefficients;
  std::sort(coeffs.begin(), coeffs.end());
  coeffs.erase(std::unique(coeffs.begin(), coeffs.end()), coeffs.end());

  using Key = std::tuple<int, std::vector<int>, std::vector<std::size_t>>;
  std::vector<std::pair<Key, std::string>> all;
  const std::size_t n = free.size();
  std::vector<int> e(n, 1);
  for (;;) {
    std::vector<std::size_t> c(n, 0);
    for (;;) {
      std::vector<UnivariatePoly> comps(ring->size());
      int degree = 0;
      for (std::size_t i = 0; i < n; ++i) {
        comps[free[i]] = UnivariatePoly::monomial(coeffs[c[i]], e[i]);
        degree += e[i];
      }
      if (tie) {
        comps[ring->half()] = comps[0];
        degree += e[0];
      }
      all.emplace_back(Key{degree, e, c}, TestCurve(ring, comps).to_string());
      std::size_t i = n;
      while (i > 0 && ++c[i - 1] == coeffs.size()) c[--i] = 0;
      if (i == 0) break;
    }
    std::size_t i = n;
    while (i > 0 && ++e[i - 1] > cfg.max_exponent) e[--i] = 1;
    if (i == 0) break;
  }
  std::sort(all.begin(), all.end());
  std::vector<std::string> out;
  for (auto& [k, s] : all) out.push_back(std::move(s));
  return out;
}

std::vector<std::string> stream_strings(const RingPtr& ring, const CurveSearchConfig& cfg) {
  std::vector<std::string> out;
  for (const auto& c : enumerate_test_curves(ring, cfg)) out.push_back(c.to_string());
  return out;
}

}  // namespace

TEST_CASE("test curves validate their components") {
  const auto D = doubled_txy();
  const TestCurve c = TestCurve::parse("s, 2s^2, 2s, s, s^2, s", D);
  CHECK(c.components().size() == 6);
  CHECK(TestCurve::parse(c.to_string(), D) == c);
  CHECK_THROWS(TestCurve::parse("s, s", D));
  CHECK_THROWS(TestCurve::parse("1 + s, s, s, s, s, s", D));
}

TEST_CASE("pullback of the D_{k+2} unfolding ideal") {
  const auto ci = catalog_ideals(2, 3, 0, {{"c", 1}});
  const TestCurve phi = TestCurve::parse("s, 2s^2, 2s, s, s^2, s", ci.unfolding_ideal.ideal.ring());
  const PullbackSummary ps = pullback_ideal(phi, ci.unfolding_ideal.ideal);
  CHECK(ps.ideal_order == Valuation::finite(2));
  const PullbackSummary pt = pullback_ideal(phi, ci.direction_ideal.ideal);
  CHECK(pt.ideal_order == Valuation::finite(1));
}

TEST_CASE("pullback of the row 1 ideal along its displayed curve") {
  const auto ci = catalog_ideals(1, 2, 2, {});
  const NormalForm nf = NormalForm::catalog(1, 2, 2);
  const TestCurve phi = TestCurve::parse(nf.displayed_curve(), ci.unfolding_ideal.ideal.ring());
  CHECK(phi.to_string() == "s^4, 2s^4, 2s, s^4, s^4, s");
  const PullbackSummary ps = pullback_ideal(phi, ci.unfolding_ideal.ideal);
  std::multiset<int> finite;
  for (const auto& o : ps.orders)
    if (!o.is_infinite()) finite.insert(o.value());
  CHECK(std::set<int>(finite.begin(), finite.end()) == std::set<int>{2, 4});
  CHECK(ps.ideal_order == Valuation::finite(2));
}

TEST_CASE("zero ideal pulls back to zero") {
  const auto D = doubled_txy();
  const TestCurve phi = TestCurve::parse("s, s, s, s, s, 2s", D);
  CHECK(pullback_ideal(phi, Ideal::zero(D)).ideal_order.is_infinite());
}

TEST_CASE("E6 and E7 witnesses along the displayed curves") {
  {
    const auto ci = catalog_ideals(5, 0, 0, {{"a3", 1}});
    const auto ring = ci.unfolding_ideal.ideal.ring();
    const Polynomial h = Polynomial::parse("y - y'", ring);
    const auto w = curve_obstruction(TestCurve::parse("s, 2s^3, 2s^2, s, s^3, s^2", ring), h,
                                     ci.unfolding_ideal.ideal);
    REQUIRE(w.has_value());
    CHECK(w->element_order == Valuation::finite(2));
    CHECK(w->ideal_order == Valuation::finite(3));
    CHECK(w->margin == 1);
  }
  {
    const auto ci = catalog_ideals(6, 0, 0, {{"a5", 1}});
    const auto ring = ci.unfolding_ideal.ideal.ring();
    const Polynomial h = Polynomial::parse("y - y'", ring);
    const auto w = curve_obstruction(TestCurve::parse("s^2, 2s^3, 2s, s^2, s^3, s", ring), h,
                                     ci.unfolding_ideal.ideal);
    REQUIRE(w.has_value());
    CHECK(w->element_order == Valuation::finite(1));
    CHECK(w->ideal_order == Valuation::finite(3));
  }
}

TEST_CASE("members never produce witnesses") {
  const auto D = doubled_txy();
  const Ideal I(D, {Polynomial::parse("x - x'", D)});
  CurveSearchConfig cfg;
  cfg.max_exponent = 3;
  for (const auto& c : enumerate_test_curves(D, cfg, 2000))
    CHECK_FALSE(curve_obstruction(c, Polynomial::parse("x - x'", D), I).has_value());
  CHECK_FALSE(closure_test(Polynomial(D), I, cfg, 5000).not_in_closure());
  CHECK_FALSE(closure_test(Polynomial::parse("y - y'", D), diagonal_ideal(D), cfg, 5000).not_in_closure());
}

TEST_CASE("stream examples") {
  const auto D = doubled_txy();
  CurveSearchConfig unit{1, {1}, true};
  const auto one = enumerate_test_curves(D, unit);
  REQUIRE(one.size() == 1);
  CHECK(one[0].to_string() == "s, s, s, s, s, s");

  for (int k = 2; k <= 4; ++k) {
    CurveSearchConfig cfg{k, {1, 2}, true};
    const std::string displayed = "s^" + std::to_string(k) + ", 2s^" + std::to_string(k) + ", 2s, s^" +
                              std::to_string(k) + ", s^" + std::to_string(k) + ", s";
    const auto all = stream_strings(D, cfg);
    CHECK(std::find(all.begin(), all.end(), displayed) != all.end());
  }

  const auto R2 = RingContext::make({"u", "v"});
  CurveSearchConfig small{2, {1, 2}, true};
  CHECK(CurveStream(R2, small).size() == 16);
  CHECK(enumerate_test_curves(R2, small).size() == 16);
  CHECK(brute_force_stream(R2, small).size() == 16);
}

TEST_CASE("stream order matches the brute-force enumeration") {
  const auto D = doubled_txy();
  for (const auto& cfg : {CurveSearchConfig{2, {1, 2}, true}, CurveSearchConfig{2, {2, 1, 1}, false},
                          CurveSearchConfig{3, {1}, true}, CurveSearchConfig{1, {1, -1, 2}, true}}) {
    const auto got = stream_strings(D, cfg);
    CHECK(got == brute_force_stream(D, cfg));
    CHECK(got.size() == CurveStream(D, cfg).size());
    CHECK(got == stream_strings(D, cfg));
  }
  const auto R = RingContext::make({"x", "y", "z"});
  CHECK(stream_strings(R, {3, {1, 2}, true}) == brute_force_stream(R, {3, {1, 2}, true}));
}

TEST_CASE("stream rejects bad configurations") {
  const auto D = doubled_txy();
  CHECK_THROWS(CurveStream(D, {0, {1}, true}));
  CHECK_THROWS(CurveStream(D, {2, {}, true}));
  CHECK_THROWS(CurveStream(D, {2, {0, 1}, true}));
}

TEST_CASE("D_{2k} direction b1 is refuted") {
  const auto ci = catalog_ideals(3, 2, 0, {{"b1", 1}});
  const auto& I = ci.unfolding_ideal.ideal;
  const auto gens = ci.direction_ideal.ideal.generators();
  const std::vector<TestCurve> displayed{TestCurve::parse("s^2, 2s^2, 2s, s^2, s^2, s", I.ring())};
  const ClosureResult on_displayed_curve = closure_test(gens, I, displayed);
  REQUIRE(on_displayed_curve.not_in_closure());
  CHECK(on_displayed_curve.witness->curve == displayed[0]);

  const NormalForm nf = NormalForm::catalog(3, 2);
  CurveSearchConfig cfg{nf.default_max_exponent(), {1, 2}, true};
  const ClosureResult searched = closure_test(gens, I, cfg, 100000);
  REQUIRE(searched.not_in_closure());
  CHECK(replay_witness(*searched.witness, I).confirmed);
}

TEST_CASE("pullback orders bound every combination") {
  std::mt19937_64 rng(41);
  const auto D = doubled_txy();
  const auto S = RingContext::make({"s"}, MonomialOrder::GradedReverseLex, false, 30000);
  CurveSearchConfig cfg{3, {1, 2, -1}, false};
  const auto curves = enumerate_test_curves(D, cfg, 5000);
  std::uniform_int_distribution<std::size_t> pick(0, curves.size() - 1);
  for (int i = 0; i < 500; ++i) {
    std::vector<Polynomial> gens;
    for (int j = 0; j < 3; ++j) gens.push_back(random_poly(rng, D, 3, 3, false));
    const Ideal I(D, gens);
    const TestCurve& phi = curves[pick(rng)];
    const PullbackSummary ps = pullback_ideal(phi, I);
    UnivariatePoly combo;
    for (const auto& p : ps.pullbacks) combo = combo + p.scaled(testing::random_rational(rng));
    CHECK(order_of_vanishing(combo) >= ps.ideal_order);
    // pull_back agrees with ring substitution
    std::vector<Polynomial> images;
    for (const auto& c : phi.components()) images.push_back(Polynomial::parse(c.to_string(), S));
    for (std::size_t g = 0; g < I.generators().size(); ++g)
      CHECK(UnivariatePoly::from_polynomial(substitute(I.generators()[g], images)) == ps.pullbacks[g]);
  }
}

TEST_CASE("serial and parallel searches agree") {
  std::mt19937_64 rng(42);
  const auto D = doubled_txy();
  CurveSearchConfig cfg{3, {1, 2}, true};
  int witnesses = 0;
  for (int i = 0; i < 60; ++i) {
    std::vector<Polynomial> gens, elems;
    for (int j = 0; j < 3; ++j) gens.push_back(double_of(random_poly(rng, RingContext::make({"t", "x", "y"}), 3, 3, false)));
    const Ideal I(gens[0].ring(), gens);
    elems.push_back(double_of(random_poly(rng, RingContext::make({"t", "x", "y"}), 2, 2, false)));
    if (elems[0].is_zero()) continue;
    const ClosureResult s = closure_test(elems, I, cfg, 8000, Execution::Serial);
    const ClosureResult p = closure_test(elems, I, cfg, 8000, Execution::Parallel);
    CHECK(s.report.curves_tried == p.report.curves_tried);
    CHECK(s.report.min_gap == p.report.min_gap);
    CHECK(s.not_in_closure() == p.not_in_closure());
    if (s.witness && p.witness) {
      ++witnesses;
      CHECK(s.witness->curve == p.witness->curve);
      CHECK(replay_witness(*s.witness, I).confirmed);
    }
  }
  CHECK(witnesses > 10);
}

TEST_CASE("large coefficients take the exact fallback path") {
  const auto D = doubled_txy();
  // coefficients near 2^62 overflow the integer kernel once raised to powers
  const std::string big = "4611686018427387903";
  const Ideal I(D, {Polynomial::parse(big + "*x^5 - " + big + "*x'^5", D), Polynomial::parse("t - t'", D)});
  const Polynomial h = Polynomial::parse(big + "*y - " + big + "*y'", D);
  CurveSearchConfig cfg{3, {1, 2}, true};
  const ClosureResult s = closure_test(h, I, cfg, 20000, Execution::Serial);
  const ClosureResult p = closure_test(h, I, cfg, 20000, Execution::Parallel);
  REQUIRE(s.not_in_closure());
  CHECK(s.witness->curve == p.witness->curve);
  CHECK(replay_witness(*s.witness, I).confirmed);
}
