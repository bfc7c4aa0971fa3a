#include "singvol/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <optional>
#include <numeric>
#include <set>

namespace singvol::oracle {

namespace {

long long idot(const IVector& a, const IVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool in_dual(const toric::ToricCone& cone, const IVector& u) {
  for (const auto& r : cone.rays())
    if (idot(u, r) < 0) return false;
  return true;
}

void check_input(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned kmax, unsigned cap) {
  if (cone.dim() > 3) throw UnsupportedError("colength oracle is limited to dimension <= 3");
  if (!a.is_m_primary(cone)) throw DomainError("ideal is not m-primary");
  if (kmax > cap) throw UnsupportedError("power exceeds the oracle cap of " + std::to_string(cap));
}

}  // namespace

std::vector<long long> colengths(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned kmax,
                                 unsigned cap) {
  check_input(cone, a, kmax, cap);
  const std::size_t n = cone.dim();
  const auto& gens = a.gens();
  std::vector<long long> out(kmax + 1, 0);
  if (kmax == 0) return out;

  // a contains t_j * ell_j on every dual ray, so a^kmax contains everything outside
  // the zonotope sum_j [0, kmax t_j) ell_j.
  IVector lo(n, 0), hi(n, 0);
  for (const auto& ell : cone.facet_normals()) {
    long long t = 0;
    for (const auto& u : gens)
      if (primitive(u) == ell) {
        long long s = gcd_of(u);
        t = t == 0 ? s : std::min(t, s);
      }
    for (std::size_t c = 0; c < n; ++c) {
      lo[c] += std::min(0LL, static_cast<long long>(kmax) * t * ell[c]);
      hi[c] += std::max(0LL, static_cast<long long>(kmax) * t * ell[c]);
    }
  }
  IVector extent(n);
  std::size_t total = 1;
  for (std::size_t c = 0; c < n; ++c) {
    extent[c] = hi[c] - lo[c] + 1;
    total *= static_cast<std::size_t>(extent[c]);
  }
  if (total > 50'000'000) throw UnsupportedError("colength oracle box too large");

  auto decode = [&](std::size_t idx) {
    IVector u(n);
    for (std::size_t c = 0; c < n; ++c) {
      u[c] = lo[c] + static_cast<long long>(idx % static_cast<std::size_t>(extent[c]));
      idx /= static_cast<std::size_t>(extent[c]);
    }
    return u;
  };
  auto encode = [&](const IVector& u) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    for (std::size_t c = n; c-- > 0;) {
      if (u[c] < lo[c] || u[c] > hi[c]) return std::nullopt;
      idx = idx * static_cast<std::size_t>(extent[c]) + static_cast<std::size_t>(u[c] - lo[c]);
    }
    return idx;
  };

  // level(u) = largest j <= kmax with u in a^j; subtracting a generator lowers the
  // pairing with an interior weight, so process points by that weight.
  IVector weight(n, 0);
  for (const auto& r : cone.rays())
    for (std::size_t c = 0; c < n; ++c) weight[c] += r[c];
  std::vector<std::size_t> order;
  for (std::size_t idx = 0; idx < total; ++idx)
    if (in_dual(cone, decode(idx))) order.push_back(idx);
  std::vector<long long> key(total, 0);
  for (auto idx : order) key[idx] = idot(decode(idx), weight);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key[x] < key[y]; });

  std::vector<unsigned> level(total, 0);
  std::vector<long long> below(kmax + 1, 0);  // below[j] = #{u : level(u) == j}
  for (auto idx : order) {
    IVector u = decode(idx);
    unsigned best = 0;
    for (const auto& g : gens) {
      IVector rest(n);
      for (std::size_t c = 0; c < n; ++c) rest[c] = u[c] - g[c];
      if (!in_dual(cone, rest)) continue;
      auto ri = encode(rest);
      unsigned lv = ri ? level[*ri] : kmax;
      best = std::max(best, std::min(kmax, lv + 1));
      if (best == kmax) break;
    }
    level[idx] = best;
    ++below[best];
  }
  long long acc = 0;
  for (unsigned k = 1; k <= kmax; ++k) {
    acc += below[k - 1];
    out[k] = acc;
  }
  return out;
}

long long colength(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned k, unsigned cap) {
  return colengths(cone, a, k, cap)[k];
}

bool CountReport::within_budget(const Rational& e) const {
  Rational err = abs(final_fitted() - e);
  return err * static_cast<long>(ks.back()) <= error_constant;
}

CountReport multiplicity_estimate(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned kmax,
                                  unsigned cap) {
  const std::size_t n = cone.dim();
  if (kmax < n + 1) throw InputError("multiplicity estimate needs kmax > n");
  auto cols = colengths(cone, a, kmax, cap);
  CountReport r;
  Integer nfact = 1;
  for (std::size_t i = 2; i <= n; ++i) nfact *= static_cast<unsigned long>(i);
  for (unsigned k = 1; k <= kmax; ++k) {
    r.ks.push_back(k);
    r.colengths.push_back(cols[k]);
    Integer kn = 1;
    for (std::size_t i = 0; i < n; ++i) kn *= k;
    Rational f(Integer(static_cast<long>(cols[k])) * nfact, kn);
    f.canonicalize();
    r.fitted.push_back(f);
  }
  // n-th forward difference of colength at k = kmax - n .. kmax.
  Integer diff = 0, binom = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    long long term = cols[kmax - n + i];
    Integer t = binom * static_cast<long>(term);
    diff += ((n - i) % 2 == 0) ? t : Integer(-t);
    binom = binom * static_cast<unsigned long>(n - i) / static_cast<unsigned long>(i + 1);
  }
  r.finite_difference = Rational(diff);
  long long d = 0;
  for (const auto& u : a.gens())
    for (auto x : u) d = std::max(d, std::llabs(x));
  r.error_constant = r.finite_difference * static_cast<long>(n) * static_cast<long>(d);
  return r;
}

std::vector<std::pair<QVector, Rational>> lp_vertex_enumerate(const LPProblem& problem) {
  const std::size_t n = problem.dim();
  const std::size_t k = problem.constraints.size();
  if (k > 12 || n > 4 || n == 0) throw UnsupportedError("vertex enumeration limited to 12 constraints, dim 1..4");
  for (const auto& c : problem.constraints)
    if (c.normal.size() != n) throw InputError("constraint dimension mismatch");

  std::set<QVector> seen;
  std::vector<std::pair<QVector, Rational>> out;
  // Bitmask walk over all n-subsets of the constraints.
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != n) continue;
    std::vector<QVector> rows;
    QVector rhs;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        rows.push_back(problem.constraints[i].normal);
        rhs.push_back(problem.constraints[i].bound);
      }
    QMatrix m(rows);
    if (determinant(m) == 0) continue;
    QVector x = solve_linear(m, rhs);
    bool feasible = true;
    for (const auto& c : problem.constraints)
      if (dot(x, c.normal) > c.bound) feasible = false;
    if (feasible && seen.insert(x).second) out.emplace_back(x, dot(problem.objective, x));
  }
  return out;
}

std::optional<Rational> lp_vertex_max(const LPProblem& problem) {
  auto verts = lp_vertex_enumerate(problem);
  if (verts.empty()) return std::nullopt;
  Rational best = verts.front().second;
  for (const auto& [pt, val] : verts) best = std::max(best, val);
  return best;
}

}  // namespace singvol::oracle
