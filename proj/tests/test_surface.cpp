#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "singvol/surface.hpp"

using namespace singvol;
using namespace singvol::surface;

namespace {

QVector q(std::initializer_list<Rational> xs) { return QVector(xs); }

ResolutionGraph two_vertex() { return ResolutionGraph({{-3, 2}, {-2, 0}}, {{0, 1, 1}}); }

// Connected graph, strictly diagonally dominant, so negative definite.
ResolutionGraph random_graph(std::mt19937& rng) {
  std::uniform_int_distribution<int> size(1, 6), genus(0, 2), slack(1, 3), mult(1, 2);
  const std::size_t n = static_cast<std::size_t>(size(rng));
  std::vector<Edge> es;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    es.push_back({parent(rng), i, mult(rng)});
  }
  if (n >= 3 && rng() % 2) es.push_back({0, n - 1, 1});
  std::vector<long long> degree(n, 0);
  for (const auto& e : es) {
    degree[e.i] += e.mult;
    degree[e.j] += e.mult;
  }
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back({-(degree[i] + slack(rng)), genus(rng)});
  return ResolutionGraph(vs, es);
}

void check_zariski_invariants(const ResolutionGraph& g, const ExcDivisor& d, const ZariskiDecomposition& z) {
  CHECK(add(z.nef_part.coeffs, z.neg_part.coeffs) == d.coeffs);
  QVector pe = intersections(g, z.nef_part);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(z.neg_part.coeffs[j] >= 0);
    CHECK(pe[j] >= 0);
    if (z.neg_part.coeffs[j] > 0) CHECK(pe[j] == 0);
  }
}

}  // namespace

TEST_CASE("graph construction validates negative definiteness") {
  CHECK_NOTHROW(two_vertex());
  CHECK_THROWS_AS(ResolutionGraph({{-2, 0}, {-2, 0}}, {{0, 1, 2}}), DomainError);
  try {
    ResolutionGraph({{-2, 0}, {-2, 0}}, {{0, 1, 2}});
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("leading minor 2") != std::string::npos);
  }
  CHECK_THROWS_AS(ResolutionGraph({{1, 0}}, {}), DomainError);
  CHECK_THROWS_AS(ResolutionGraph({{-2, 0}, {-2, 0}}, {}), DomainError);  // disconnected
  CHECK_THROWS_AS(ResolutionGraph({{-2, 0}}, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(ResolutionGraph({{-2, -1}}, {}), InputError);
  CHECK_THROWS_AS(ResolutionGraph({}, {}), InputError);
}

TEST_CASE("canonical_intersections by adjunction") {
  // 2*2 - 2 - (-1)
  CHECK(canonical_intersections(ResolutionGraph({{-1, 2}}, {})) == q({3}));
  CHECK(canonical_intersections(ResolutionGraph({{-2, 0}}, {})) == q({0}));
  CHECK(canonical_intersections(two_vertex()) == q({5, 0}));
}

TEST_CASE("numerical_pullback") {
  CHECK(numerical_pullback(ResolutionGraph({{-2, 0}}, {}), q({0})).coeffs == q({0}));
  CHECK(numerical_pullback(two_vertex(), q({5, 0})).coeffs == q({-2, -1}));
  for (long long d = 1; d <= 5; ++d)
    CHECK(numerical_pullback(simple_elliptic(d), q({Rational(static_cast<long>(d))})).coeffs == q({-1}));
}

TEST_CASE("log_discrepancy_divisor") {
  CHECK(log_discrepancy_divisor(duval("A1")).coeffs == q({1}));
  CHECK(log_discrepancy_divisor(simple_elliptic(3)).coeffs == q({0}));
  CHECK(log_discrepancy_divisor(two_vertex()).coeffs == q({-1, 0}));
}

TEST_CASE("zariski_decompose examples") {
  auto a1 = duval("A1");
  auto z = zariski_decompose(a1, {q({-1})});
  CHECK(z.nef_part.coeffs == q({-1}));
  CHECK(z.neg_part.coeffs == q({0}));
  z = zariski_decompose(a1, {q({1})});
  CHECK(z.nef_part.coeffs == q({0}));
  CHECK(z.neg_part.coeffs == q({1}));
  auto g = two_vertex();
  z = zariski_decompose(g, {q({-1, 0})});
  CHECK(z.nef_part.coeffs == q({-1, Rational(-1, 2)}));
  CHECK(z.neg_part.coeffs == q({0, Rational(1, 2)}));
  CHECK(intersections(g, z.nef_part)[0] == Rational(5, 2));
}

TEST_CASE("volume, classify and local_volume examples") {
  CHECK(volume(duval("A1")) == 0);
  CHECK(volume(cone_graph(2, 1)) == 4);
  CHECK(volume(two_vertex()) == Rational(5, 2));

  CHECK(classify(duval("A1")).kind == SingularityClass::Klt);
  CHECK(classify(simple_elliptic(2)).kind == SingularityClass::LcNotKlt);
  auto c = classify(cone_graph(2, 1));
  CHECK(c.kind == SingularityClass::NotLc);
  CHECK(c.log_discrepancy.coeffs == q({-2}));

  auto a1 = duval("A1");
  CHECK(local_volume(a1, {q({-1})}) == 2);
  CHECK(local_volume(a1, {q({1})}) == 0);
  CHECK(local_volume(two_vertex(), log_discrepancy_divisor(two_vertex())) == Rational(5, 2));
}

TEST_CASE("standard graphs") {
  auto c = cone_graph(2, 1);
  REQUIRE(c.size() == 1);
  CHECK(c.vertices()[0].self_int == -1);
  CHECK(c.vertices()[0].genus == 2);

  auto a2 = duval("A2");
  CHECK(a2.size() == 2);
  CHECK(a2.edges().size() == 1);
  CHECK(duval("D4").size() == 4);
  CHECK(duval("E6").size() == 6);
  CHECK(duval("E8").size() == 8);
  CHECK_THROWS_AS(duval("E9"), InputError);
  CHECK_THROWS_AS(duval("D3"), InputError);

  auto cusp = cusp_cycle({-3, -2, -2});
  CHECK(cusp.size() == 3);
  CHECK(cusp.edges().size() == 3);
  CHECK(classify(cusp).kind == SingularityClass::LcNotKlt);
  CHECK(classify(cusp).log_discrepancy.coeffs == q({0, 0, 0}));
  CHECK(volume(cusp) == 0);
  CHECK_THROWS_AS(cusp_cycle({-2, -2, -2}), DomainError);
  CHECK_THROWS_AS(cusp_cycle({-3, -1, -2}), DomainError);

  for (const auto& cyc : std::vector<std::vector<long long>>{{-3}, {-5}, {-3, -2}, {-4, -4}, {-2, -3, -2, -2}}) {
    auto g = cusp_cycle(cyc);
    CHECK(classify(g).kind == SingularityClass::LcNotKlt);
    CHECK(volume(g) == 0);
  }
}

TEST_CASE("Du Val graphs are klt with volume 0") {
  for (const std::string t : {"A1", "A2", "A5", "D4", "D5", "D7", "E6", "E7", "E8"}) {
    auto g = duval(t);
    CAPTURE(t);
    CHECK(classify(g).kind == SingularityClass::Klt);
    CHECK(discrepancies(g).coeffs == QVector(g.size(), 0));
    CHECK(volume(g) == 0);
  }
}

TEST_CASE("cone volumes follow (2g-2)^2/d") {
  for (long long g = 0; g <= 5; ++g)
    for (long long d = 1; d <= 6; ++d) {
      Rational expected = g >= 1 ? Rational(static_cast<long>((2 * g - 2) * (2 * g - 2)), static_cast<unsigned long>(d))
                                 : Rational(0);
      expected.canonicalize();
      CHECK(volume(cone_graph(g, d)) == expected);
    }
}

TEST_CASE("cover multiplicativity on cones") {
  for (long long e = 1; e <= 5; ++e)
    for (long long g = 2; g <= 4; ++g)
      for (long long d = 1; d <= 4; ++d)
        CHECK(volume(cone_graph(e * (g - 1) + 1, e * d)) == Rational(static_cast<long>(e)) * volume(cone_graph(g, d)));
}

TEST_CASE("random graphs: discrepancy equation, Zariski invariants, volume/class consistency") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng);
    CHECK(is_negative_definite(g.intersection_matrix()));
    auto a = discrepancies(g);
    CHECK(intersections(g, a) == canonical_intersections(g));

    auto ld = log_discrepancy_divisor(g);
    check_zariski_invariants(g, ld, zariski_decompose(g, ld));

    std::uniform_int_distribution<long> coef(-6, 6);
    ExcDivisor d;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Rational c(coef(rng), 1 + rng() % 3);
      c.canonicalize();
      d.coeffs.push_back(c);
    }
    check_zariski_invariants(g, d, zariski_decompose(g, d));

    Rational vol = volume(g);
    CHECK(vol >= 0);
    CHECK((vol == 0) == (classify(g).kind != SingularityClass::NotLc));
  }
}

TEST_CASE("Zariski decomposition is independent of vertex order") {
  std::mt19937 rng(555);
  std::vector<ResolutionGraph> graphs{two_vertex(), duval("E7"), cusp_cycle({-3, -2, -4, -2})};
  for (int i = 0; i < 40; ++i) graphs.push_back(random_graph(rng));
  for (const auto& g : graphs) {
    auto ld = log_discrepancy_divisor(g);
    auto base = zariski_decompose(g, ld);
    std::vector<std::size_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < 6; ++round) {
      std::shuffle(perm.begin(), perm.end(), rng);
      auto h = g.relabel(perm);
      auto z = zariski_decompose(h, log_discrepancy_divisor(h));
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(z.nef_part.coeffs[perm[i]] == base.nef_part.coeffs[i]);
        CHECK(z.neg_part.coeffs[perm[i]] == base.neg_part.coeffs[i]);
      }
      CHECK(volume(h) == volume(g));
    }
  }
}
