#include "singvol/surface.hpp"

#include <algorithm>
#include <cctype>

namespace singvol::surface {

namespace {

bool connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.i)] = find(e.j);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

}  // namespace

ResolutionGraph::ResolutionGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw InputError("resolution graph has no vertices");
  for (const auto& v : vertices_)
    if (v.genus < 0) throw InputError("negative genus");
  matrix_ = QMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) matrix_(i, i) = static_cast<long>(vertices_[i].self_int);
  for (const auto& e : edges_) {
    if (e.i >= n || e.j >= n) throw InputError("edge endpoint out of range");
    if (e.i == e.j) throw InputError("self-loop edge; present the curve as a blown-up SNC graph");
    if (e.mult <= 0) throw InputError("edge multiplicity must be positive");
    matrix_(e.i, e.j) += static_cast<long>(e.mult);
    matrix_(e.j, e.i) += static_cast<long>(e.mult);
  }
  if (!connected(n, edges_)) throw DomainError("resolution graph is not connected");
  auto minors = leading_minors(matrix_);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    int want = (k % 2 == 0) ? -1 : 1;
    if (sgn(minors[k]) != want) {
      throw DomainError("intersection matrix is not negative definite: leading minor " +
                        std::to_string(k + 1) + " = " + singvol::to_string(minors[k]));
    }
  }
}

ResolutionGraph ResolutionGraph::relabel(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) throw InputError("relabel: permutation size mismatch");
  std::vector<Vertex> vs(size());
  for (std::size_t i = 0; i < size(); ++i) vs[perm[i]] = vertices_[i];
  std::vector<Edge> es;
  for (const auto& e : edges_) es.push_back({perm[e.i], perm[e.j], e.mult});
  return ResolutionGraph(std::move(vs), std::move(es));
}

std::string to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Klt:
      return "klt";
    case SingularityClass::LcNotKlt:
      return "lc_not_klt";
    case SingularityClass::NotLc:
      return "not_lc";
  }
  return "?";
}

QVector intersections(const ResolutionGraph& g, const ExcDivisor& d) {
  if (d.coeffs.size() != g.size()) throw InputError("divisor length does not match graph");
  return g.intersection_matrix().apply(d.coeffs);
}

Rational intersect(const ResolutionGraph& g, const ExcDivisor& a, const ExcDivisor& b) {
  return dot(a.coeffs, intersections(g, b));
}

QVector canonical_intersections(const ResolutionGraph& g) {
  QVector k;
  for (const auto& v : g.vertices()) k.emplace_back(static_cast<long>(2 * v.genus - 2 - v.self_int));
  return k;
}

ExcDivisor numerical_pullback(const ResolutionGraph& g, const QVector& rhs) {
  if (rhs.size() != g.size()) throw InputError("pull-back data length does not match graph");
  return {solve_linear(g.intersection_matrix(), rhs)};
}

ExcDivisor discrepancies(const ResolutionGraph& g) {
  return numerical_pullback(g, canonical_intersections(g));
}

ExcDivisor log_discrepancy_divisor(const ResolutionGraph& g) {
  ExcDivisor a = discrepancies(g);
  for (auto& x : a.coeffs) x += 1;
  return a;
}

ZariskiDecomposition zariski_decompose(const ResolutionGraph& g, const ExcDivisor& d) {
  const std::size_t n = g.size();
  if (d.coeffs.size() != n) throw InputError("divisor length does not match graph");
  const QMatrix& m = g.intersection_matrix();

  std::vector<bool> in_support(n, false);
  QVector neg(n);
  for (std::size_t round = 0; round <= n; ++round) {
    QVector p = sub(d.coeffs, neg);
    QVector pe = m.apply(p);
    bool grew = false;
    for (std::size_t j = 0; j < n; ++j)
      if (pe[j] < 0 && !in_support[j]) in_support[j] = grew = true;
    if (!grew) return {{p}, {neg}};

    // N supported on S with (d - N).E_j = 0 for j in S.
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < n; ++j)
      if (in_support[j]) s.push_back(j);
    QMatrix sub_m(s.size(), s.size());
    QVector rhs(s.size());
    QVector de = m.apply(d.coeffs);
    for (std::size_t a = 0; a < s.size(); ++a) {
      rhs[a] = de[s[a]];
      for (std::size_t b = 0; b < s.size(); ++b) sub_m(a, b) = m(s[a], s[b]);
    }
    QVector c = solve_linear(sub_m, rhs);
    neg.assign(n, 0);
    for (std::size_t a = 0; a < s.size(); ++a) neg[s[a]] = c[a];
  }
  throw std::logic_error("zariski_decompose: no convergence");
}

Rational volume(const ResolutionGraph& g) {
  return local_volume(g, log_discrepancy_divisor(g));
}

Classification classify(const ResolutionGraph& g) {
  ExcDivisor a = log_discrepancy_divisor(g);
  bool all_pos = std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const Rational& x) { return x > 0; });
  bool all_nonneg = std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const Rational& x) { return x >= 0; });
  SingularityClass kind = all_pos      ? SingularityClass::Klt
                          : all_nonneg ? SingularityClass::LcNotKlt
                                       : SingularityClass::NotLc;
  return {kind, std::move(a)};
}

Rational local_volume(const ResolutionGraph& g, const ExcDivisor& d) {
  auto z = zariski_decompose(g, d);
  return -intersect(g, z.nef_part, z.nef_part);
}

// ---------------------------------------------------------------------------

ResolutionGraph cone_graph(long long genus, long long degree) {
  if (genus < 0) throw InputError("cone: genus must be >= 0");
  if (degree < 1) throw DomainError("cone: degree must be >= 1");
  return ResolutionGraph({{-degree, genus}}, {});
}

ResolutionGraph cusp_cycle(const std::vector<long long>& self_ints) {
  if (self_ints.empty()) throw InputError("cusp cycle: empty");
  if (std::any_of(self_ints.begin(), self_ints.end(), [](long long e) { return e > -2; }))
    throw DomainError("cusp cycle: every self-intersection must be <= -2");
  if (std::none_of(self_ints.begin(), self_ints.end(), [](long long e) { return e <= -3; }))
    throw DomainError("cusp cycle: a cycle of (-2)-curves is not negative definite");
  const std::size_t n = self_ints.size();
  if (n == 1) return ResolutionGraph({{self_ints[0], 1}}, {});
  if (n == 2) return ResolutionGraph({{self_ints[0], 0}, {self_ints[1], 0}}, {{0, 1, 2}});
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back({self_ints[i], 0});
    es.push_back({i, (i + 1) % n, 1});
  }
  return ResolutionGraph(std::move(vs), std::move(es));
}

ResolutionGraph duval(const std::string& type) {
  if (type.size() < 2 || !std::all_of(type.begin() + 1, type.end(), ::isdigit))
    throw InputError("duval: expected A<n>, D<n>, E6, E7 or E8, got \"" + type + "\"");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  const long long n = std::stoll(type.substr(1));
  auto chain = [](long long len) {
    std::vector<Vertex> vs(static_cast<std::size_t>(len), Vertex{-2, 0});
    std::vector<Edge> es;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) es.push_back({i, i + 1, 1});
    return std::pair{vs, es};
  };
  if (family == 'A' && n >= 1) {
    auto [vs, es] = chain(n);
    return ResolutionGraph(vs, es);
  }
  if (family == 'D' && n >= 4) {
    // chain 0..n-2, extra vertex n-1 attached to vertex 1
    auto [vs, es] = chain(n - 1);
    vs.push_back({-2, 0});
    es.push_back({1, static_cast<std::size_t>(n - 1), 1});
    return ResolutionGraph(vs, es);
  }
  if (family == 'E' && n >= 6 && n <= 8) {
    // chain 0..n-2, extra vertex attached to vertex 2
    auto [vs, es] = chain(n - 1);
    vs.push_back({-2, 0});
    es.push_back({2, static_cast<std::size_t>(n - 1), 1});
    return ResolutionGraph(vs, es);
  }
  throw InputError("duval: unknown type \"" + type + "\"");
}

ResolutionGraph simple_elliptic(long long degree) {
  if (degree < 1) throw DomainError("simple elliptic: degree must be >= 1");
  return ResolutionGraph({{-degree, 1}}, {});
}

}  // namespace singvol::surface
