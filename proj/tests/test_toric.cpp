#include "doctest.h"

#include <random>

#include "singvol/oracle.hpp"
#include "singvol/toric.hpp"

using namespace singvol;
using namespace singvol::toric;

namespace {

ToricCone quadric() { return ToricCone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}); }
ToricCone plane() { return ToricCone(2, {{1, 0}, {0, 1}}); }

ToricDivisor div(std::initializer_list<Rational> xs) { return {QVector(xs)}; }

MonomialIdeal ideal2(std::vector<IVector> gens) { return MonomialIdeal(plane(), std::move(gens)); }

// Random m-primary ideal in the plane: pure powers x^a, y^b plus a few mixed monomials.
MonomialIdeal random_plane_ideal(std::mt19937& rng, long long max_deg) {
  std::uniform_int_distribution<long long> deg(1, max_deg), extra(0, 3);
  std::vector<IVector> gens{{deg(rng), 0}, {0, deg(rng)}};
  for (long long i = extra(rng); i > 0; --i) {
    std::uniform_int_distribution<long long> c(0, max_deg);
    IVector u{c(rng), c(rng)};
    if (u[0] + u[1] > 0) gens.push_back(u);
  }
  return ideal2(gens);
}

}  // namespace

TEST_CASE("cone validation") {
  CHECK_NOTHROW(quadric());
  CHECK(quadric().facet_normals().size() == 4);
  CHECK(quadric().isolated_checked());
  CHECK_THROWS_AS(ToricCone(3, {{2, 2, 0}, {0, 0, 1}, {1, 0, 0}}), InputError);
  CHECK_THROWS_AS(ToricCone(2, {{1, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(ToricCone(2, {{1, 0}, {-1, 0}}), DomainError);
  CHECK_THROWS_AS(ToricCone(2, {{1, 0}}), DomainError);
  // the edge spanned by (1,0,0),(1,2,0) is not unimodular
  CHECK_THROWS_AS(ToricCone(3, {{1, 0, 0}, {1, 2, 0}, {0, 0, 1}}), DomainError);
  CHECK(quadric().contains({1, 1, 0}));
  CHECK(quadric().contains_interior({1, 1, 0}));
  CHECK_FALSE(quadric().contains_interior({1, 0, 0}));
  CHECK_FALSE(quadric().contains({0, 0, -1}));
  CHECK(ToricCone(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}).isolated_checked() == false);
}

TEST_CASE("envelope examples") {
  auto c = quadric();
  CHECK(envelope_value(c, div({2, 1, 2, 1}), {1, 1, 0}) == 3);
  CHECK(envelope_value(c, div({0, 0, 0, 0}), {1, 1, 0}) == 0);
  CHECK(envelope_value(c, div({0, 0, 0, 0}), {2, 1, 1}) == 0);
  CHECK(envelope_value(c, div({1, 1, 1, 0}), {1, 1, 0}) == 1);

  EnvelopeFunction env(c, div({2, 1, 2, 1}));
  auto r = env.evaluate({1, 1, 0});
  CHECK(r.value == 3);
  CHECK(dot(r.optimal_m, to_qvector(IVector{1, 1, 0})) == 3);
  for (std::size_t i = 0; i < c.rays().size(); ++i)
    CHECK(dot(r.optimal_m, to_qvector(c.rays()[i])) <= env.divisor().coeffs[i]);
  CHECK_THROWS_AS(env.value({0, 0, -1}), DomainError);

  // D1 = E100 + E010 + E001 and D2 = E100 + E001 + E11-1 separately
  CHECK(envelope_value(c, div({1, 0, 1, 1}), {1, 1, 0}) == 1);
  CHECK(envelope_value(c, div({1, 1, 1, 0}) + div({1, 0, 1, 1}), {1, 1, 0}) == 3);
}

TEST_CASE("envelope LP agrees with vertex enumeration") {
  auto c = quadric();
  for (auto d : {div({2, 1, 2, 1}), div({1, 1, 1, 0}), div({0, 0, 0, 0}), div({3, -1, 2, 0})})
    for (const auto& v : sample_points(c)) {
      auto oracle_max = oracle::lp_vertex_max(envelope_lp(c, d, v));
      REQUIRE(oracle_max.has_value());
      CHECK(*oracle_max == envelope_value(c, d, v));
    }
}

TEST_CASE("numerically Cartier") {
  auto c = quadric();
  auto r = is_numerically_cartier(c, div({2, 1, 2, 1}));
  CHECK(r.cartier);
  REQUIRE(r.linear_form.has_value());
  CHECK(*r.linear_form == QVector{2, 1, 2});
  CHECK(r.gap == 0);

  r = is_numerically_cartier(c, div({1, 1, 1, 0}));
  CHECK_FALSE(r.cartier);
  REQUIRE(r.witness.has_value());
  CHECK(c.contains_interior(*r.witness));
  CHECK(r.gap < 0);
  CHECK(r.gap == envelope_value(c, div({1, 1, 1, 0}), *r.witness) + envelope_value(c, div({-1, -1, -1, 0}), *r.witness));

  CHECK(is_numerically_cartier(plane(), div({Rational(3, 7), -5})).cartier);
  CHECK(is_numerically_cartier(ToricCone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), div({1, 2, 3})).cartier);
}

TEST_CASE("z_value examples") {
  auto p = plane();
  CHECK(z_value(p, ideal2({{1, 0}, {0, 1}}), {1, 1}) == -1);
  CHECK(z_value(p, ideal2({{1, 0}, {0, 2}}), {2, 1}) == -2);
  CHECK(z_value(p, ideal2({{1, 0}, {0, 2}}), {1, 1}) == -1);
  CHECK_THROWS_AS(z_value(p, ideal2({{1, 0}}), {-1, 1}), DomainError);
}

TEST_CASE("ideals: minimalization, m-primary, maximal ideal") {
  auto p = plane();
  auto a = ideal2({{1, 0}, {2, 0}, {1, 3}, {0, 2}});
  CHECK(a.gens().size() == 2);
  CHECK(a.is_m_primary(p));
  CHECK_FALSE(ideal2({{1, 0}}).is_m_primary(p));
  CHECK_FALSE(ideal2({{1, 1}}).is_m_primary(p));
  CHECK(ideal2({{0, 0}, {1, 0}}).is_unit());
  CHECK_THROWS_AS(ideal2({{-1, 0}}), DomainError);

  auto m = maximal_ideal(quadric());
  CHECK(m.gens().size() == 4);
  CHECK(m.is_m_primary(quadric()));
  CHECK(maximal_ideal(p).gens().size() == 2);
}

TEST_CASE("Samuel multiplicity examples") {
  auto p = plane();
  CHECK(samuel_multiplicity(p, ideal2({{1, 0}, {0, 1}})) == 1);
  CHECK(samuel_multiplicity(p, ideal2({{1, 0}, {0, 2}})) == 2);
  CHECK(samuel_multiplicity(p, ideal2({{2, 0}, {0, 3}})) == 6);
  CHECK(samuel_multiplicity(quadric(), maximal_ideal(quadric())) == 2);
  CHECK(samuel_multiplicity(ToricCone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                            maximal_ideal(ToricCone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))) == 1);
  CHECK_THROWS_AS(samuel_multiplicity(p, ideal2({{1, 0}})), DomainError);
  ToricCone c4(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(samuel_multiplicity(c4, maximal_ideal(c4)), UnsupportedError);
}

TEST_CASE("mixed multiplicity examples") {
  auto p = plane();
  auto a = ideal2({{1, 0}, {0, 2}});
  auto b = ideal2({{2, 0}, {0, 1}});
  auto m = ideal2({{1, 0}, {0, 1}});
  CHECK(mixed_multiplicity(p, {a, a}) == 2);
  CHECK(mixed_multiplicity(p, {a, b}) == 1);
  CHECK(mixed_multiplicity(p, {b, a}) == 1);
  CHECK(mixed_multiplicity(p, {m, a}) == 1);
  CHECK(samuel_multiplicity(p, product(p, a, b)) == 6);
  auto q = quadric();
  auto mq = maximal_ideal(q);
  CHECK(mixed_multiplicity(q, {mq, mq, mq}) == 2);
  CHECK(mixed_multiplicity(q, {power(q, mq, 2), mq, mq}) == 4);
}

TEST_CASE("defect ideals") {
  auto c = quadric();
  auto unit = defect_ideal(c, div({0, 0, 0, 0}), 1);
  CHECK(unit.is_unit());
  for (long long m : {1, 2, 3}) CHECK(defect_ideal(c, div({2, 1, 2, 1}), m).is_unit());

  auto d = div({1, 1, 1, 0});
  auto dm = defect_ideal(c, d, 1);
  CHECK_FALSE(dm.is_unit());
  CHECK(z_value(c, dm, {1, 1, 0}) < 0);
  for (long long m : {1, 2}) CHECK(defect_ideal(c, d, m, 2).gens() == defect_ideal(c, d, m, 1).gens());

  Rational bound = envelope_value(c, d, {1, 1, 0}) + envelope_value(c, -d, {1, 1, 0});
  Rational prev = z_value(c, dm, {1, 1, 0});
  CHECK(prev <= bound);
  for (long long m : {2, 4, 8}) {
    Rational cur = z_value(c, defect_ideal(c, d, m), {1, 1, 0}) / Rational(static_cast<long>(m));
    CHECK(cur >= prev);
    CHECK(cur <= bound);
    prev = cur;
  }
  CHECK_THROWS_AS(defect_ideal(c, div({Rational(1, 2), 0, 0, 0}), 1), DomainError);
}

TEST_CASE("Izumi constants") {
  CHECK(izumi_constant(plane(), {1, 1}, {1, 2}) == 2);
  CHECK(izumi_constant(plane(), {3, 5}, {3, 5}) == 1);
  CHECK(izumi_constant(quadric(), {1, 1, 1}, {1, 1, 0}) == 1);
  CHECK(izumi_constant(quadric(), {1, 1, 0}, {1, 1, 1}) == 2);
  CHECK_THROWS_AS(izumi_constant(plane(), {1, 0}, {1, 1}), DomainError);
}

TEST_CASE("log discrepancy values") {
  auto l = log_discrepancy_value(plane(), {1, 1});
  CHECK(l.value == 2);
  CHECK(l.nonnegativity_certificate == QVector{0, 0});
  CHECK(log_discrepancy_value(quadric(), {1, 1, 0}).value == 2);
  for (const auto& v : sample_points(quadric()))
    if (quadric().contains_interior(v)) CHECK(log_discrepancy_value(quadric(), v).value >= 0);
  CHECK_THROWS_AS(log_discrepancy_value(plane(), {1, 0}), DomainError);
}

TEST_CASE("envelope properties on random divisors") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> coef(-4, 4), den(1, 3);
  auto c = quadric();
  auto samples = sample_points(c);
  auto rand_div = [&] {
    ToricDivisor d;
    for (int i = 0; i < 4; ++i) {
      Rational x(coef(rng), static_cast<unsigned long>(den(rng)));
      x.canonicalize();
      d.coeffs.push_back(x);
    }
    return d;
  };
  for (int trial = 0; trial < 40; ++trial) {
    auto d = rand_div(), e = rand_div();
    Rational t(den(rng), static_cast<unsigned long>(den(rng)));
    t.canonicalize();
    ToricDivisor bigger = d;
    for (auto& x : bigger.coeffs) x += den(rng);
    for (std::size_t i = 0; i < c.rays().size(); ++i) CHECK(envelope_value(c, d, c.rays()[i]) == d.coeffs[i]);
    for (const auto& v : samples) {
      Rational ed = envelope_value(c, d, v);
      CHECK(envelope_value(c, d + e, v) >= ed + envelope_value(c, e, v));
      CHECK(envelope_value(c, t * d, v) == t * ed);
      CHECK(envelope_value(c, bigger, v) >= ed);
    }
  }
}

TEST_CASE("multiplicity properties on random plane ideals") {
  std::mt19937 rng(7);
  auto p = plane();
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_plane_ideal(rng, 5), a2 = random_plane_ideal(rng, 5), b = random_plane_ideal(rng, 5);
    Rational eab = mixed_multiplicity(p, {a, b});
    CHECK(eab == mixed_multiplicity(p, {b, a}));
    CHECK(mixed_multiplicity(p, {a, a}) == samuel_multiplicity(p, a));
    CHECK(mixed_multiplicity(p, {product(p, a, a2), b}) == eab + mixed_multiplicity(p, {a2, b}));
    CHECK(eab * eab <= samuel_multiplicity(p, a) * samuel_multiplicity(p, b));

    // ord_w(a) <= c(v, w) ord_v(a)
    std::uniform_int_distribution<long long> coord(1, 6);
    IVector v{coord(rng), coord(rng)}, w{coord(rng), coord(rng)};
    CHECK(a.ord(w) <= izumi_constant(p, v, w) * a.ord(v));
  }
}

TEST_CASE("increasing net a + m^k") {
  auto p = plane();
  auto a = ideal2({{1, 0}, {0, 3}});
  auto m = maximal_ideal(p);
  Rational ea = samuel_multiplicity(p, a);
  CHECK(ea == 3);
  Rational prev = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    Rational ek = samuel_multiplicity(p, ideal_sum(p, a, power(p, m, k)));
    CHECK(ek >= prev);
    CHECK(ek <= ea);
    if (k >= 3) CHECK(ek == ea);
    prev = ek;
  }
}
