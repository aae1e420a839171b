#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gencluster/coeff_ring.hpp"
#include "gencluster/semifield.hpp"

using namespace gencluster;

TEST_CASE("semifield spec construction") {
  auto spec = make_spec(SemifieldSpec::product({{"y1", "y2"}, {"z"}}));
  CHECK(spec->size() == 3);
  CHECK(spec->block_sizes() == std::vector<std::size_t>{2, 1});
  CHECK(*spec->index_of("z") == 2);
  CHECK(!spec->index_of("w"));
  CHECK(trivial_spec()->trivial());
  CHECK_THROWS_AS(SemifieldSpec::product({{"y", "y"}}), ConfigError);
  CHECK_THROWS_AS(SemifieldSpec::product({{"y"}, {"y"}}), ConfigError);
}

TEST_CASE("tropical multiplication is exponent addition") {
  auto spec = make_spec(SemifieldSpec::single_block({"a", "b"}));
  auto a = TropicalElement::generator(spec, 0);
  auto b = TropicalElement::generator(spec, 1);
  auto p = trop_mul(trop_pow(a, 3), trop_inv(b));
  CHECK(p.exponents() == ExpVec{3, -1});
  CHECK(trop_div(p, p).is_one());
  CHECK(trop_pow(p, Int(2)).exponents() == ExpVec{6, -2});
  CHECK(TropicalElement::one(spec).is_one());

  auto other = make_spec(SemifieldSpec::single_block({"c"}));
  CHECK_THROWS_AS(trop_mul(a, TropicalElement::generator(other, 0)), ConfigError);
}

TEST_CASE("tropical addition is componentwise min") {
  auto spec = make_spec(SemifieldSpec::single_block({"a", "b"}));
  TropicalElement u(spec, {2, -1});
  TropicalElement v(spec, {0, 4});
  CHECK(trop_oplus(u, v).exponents() == ExpVec{0, -1});
  CHECK(oplus_fold(std::vector{u, v, TropicalElement::one(spec)}).exponents() == ExpVec{0, -1});
  CHECK_THROWS_AS(oplus_fold(std::vector<TropicalElement>{}), ConfigError);
}

TEST_CASE("group ring arithmetic over the semifield") {
  auto spec = make_spec(SemifieldSpec::single_block({"a", "b"}));
  auto a = CoeffRingElement::embed(TropicalElement::generator(spec, 0));
  auto b = CoeffRingElement::embed(TropicalElement::generator(spec, 1));
  auto one = CoeffRingElement::one(spec);

  auto s = a + b + one;
  CHECK(s.terms().size() == 3);
  CHECK((s - s).is_zero());
  auto sq = s * s;
  // (a + b + 1)^2 has six distinct monomials
  CHECK(sq.terms().size() == 6);
  CHECK(sq.terms().at(ExpVec{1, 1}) == 2);
  CHECK(a.is_unit_monomial());
  CHECK(!s.is_unit_monomial());
  auto two_a = a + a;
  CHECK(!two_a.is_unit_monomial());
  CHECK(CoeffRingElement::constant(spec, Int(5)).terms().at(ExpVec{0, 0}) == 5);
}
