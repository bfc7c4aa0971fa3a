#include "singvol/toric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace singvol::toric {

namespace {

long long idot(const IVector& a, const IVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVector iadd(const IVector& a, const IVector& b) {
  IVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IVector isub(const IVector& a, const IVector& b) {
  IVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Integer multiple of a rational vector with coprime entries.
IVector clear_denominators(const QVector& q) {
  Integer l = 1;
  for (const auto& x : q) l = lcm(l, Integer(x.get_den()));
  IVector out;
  for (const auto& x : q) {
    Rational y = x * l;
    out.push_back(y.get_num().get_si());
  }
  return primitive(out);
}

QMatrix rows_of(const std::vector<IVector>& vs) {
  std::vector<QVector> rows;
  for (const auto& v : vs) rows.push_back(to_qvector(v));
  return QMatrix(rows);
}

// Calls fn(u) for every k-subset of indices [0, n).
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

void for_each_point(const IVector& lo, const IVector& hi, const std::function<void(const IVector&)>& fn) {
  IVector u = lo;
  const std::size_t n = lo.size();
  for (std::size_t k = 0; k < n; ++k)
    if (lo[k] > hi[k]) return;
  for (;;) {
    fn(u);
    std::size_t k = 0;
    while (k < n && u[k] == hi[k]) {
      u[k] = lo[k];
      ++k;
    }
    if (k == n) return;
    ++u[k];
  }
}

long long floor_q(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

long long ceil_q(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

long long factorial(std::size_t n) {
  long long f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long long>(i);
  return f;
}

void require_dim(const ToricCone& cone, const IVector& v, const char* what) {
  if (v.size() != cone.dim()) throw InputError(std::string(what) + ": vector has wrong dimension");
}

}  // namespace

// ---------------------------------------------------------------------------

ToricCone::ToricCone(std::size_t dim, std::vector<IVector> rays) : dim_(dim), rays_(std::move(rays)) {
  if (dim_ == 0) throw InputError("cone dimension must be positive");
  if (rays_.empty()) throw InputError("cone has no rays");
  for (const auto& r : rays_) {
    if (r.size() != dim_) throw InputError("ray has wrong dimension");
    long long g = gcd_of(r);
    if (g == 0) throw InputError("zero ray");
    if (g != 1) {
      std::string hint;
      for (auto x : primitive(r)) hint += (hint.empty() ? "" : ",") + std::to_string(x);
      throw InputError("ray is not primitive; use (" + hint + ")");
    }
  }
  {
    std::set<IVector> uniq(rays_.begin(), rays_.end());
    if (uniq.size() != rays_.size()) throw InputError("duplicate ray");
  }
  if (rank(rows_of(rays_)) != dim_) throw DomainError("cone is not full-dimensional");

  std::set<IVector> normals;
  if (dim_ == 1) {
    if (rays_.size() != 1) throw DomainError("cone is not strongly convex");
    normals.insert(rays_[0]);
  } else {
    for_each_subset(rays_.size(), dim_ - 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<IVector> sub;
      for (auto i : idx) sub.push_back(rays_[i]);
      auto ns = null_space(rows_of(sub));
      if (ns.size() != 1) return;
      IVector nrm = clear_denominators(ns[0]);
      int side = 0;
      for (const auto& r : rays_) {
        long long s = idot(nrm, r);
        int sg = (s > 0) - (s < 0);
        if (sg == 0) continue;
        if (side == 0) side = sg;
        if (sg != side) return;
      }
      if (side < 0)
        for (auto& x : nrm) x = -x;
      normals.insert(nrm);
    });
  }
  facets_.assign(normals.begin(), normals.end());
  if (facets_.empty() || rank(rows_of(facets_)) != dim_) throw DomainError("cone is not strongly convex");

  for (const auto& r : rays_) {
    std::vector<IVector> tight;
    for (const auto& f : facets_)
      if (idot(f, r) == 0) tight.push_back(f);
    if (dim_ > 1 && (tight.empty() || rank(rows_of(tight)) != dim_ - 1))
      throw DomainError("ray is not extreme");
  }

  if (dim_ >= 4) {
    isolated_checked_ = false;
  } else if (dim_ == 3) {
    for (const auto& f : facets_) {
      std::vector<IVector> on;
      for (const auto& r : rays_)
        if (idot(f, r) == 0) on.push_back(r);
      if (on.size() != 2) throw DomainError("non-simplicial facet: singularity is not isolated");
      const auto& a = on[0];
      const auto& b = on[1];
      long long g = std::gcd(std::gcd(a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0]),
                             a[1] * b[2] - a[2] * b[1]);
      if (g != 1) throw DomainError("singular two-dimensional face: singularity is not isolated");
    }
  }
}

bool ToricCone::contains(const IVector& v) const {
  if (v.size() != dim_) return false;
  return std::all_of(facets_.begin(), facets_.end(), [&](const IVector& f) { return idot(f, v) >= 0; });
}

bool ToricCone::contains_interior(const IVector& v) const {
  if (v.size() != dim_) return false;
  return std::all_of(facets_.begin(), facets_.end(), [&](const IVector& f) { return idot(f, v) > 0; });
}

bool ToricCone::dual_contains(const IVector& u) const {
  if (u.size() != dim_) return false;
  return std::all_of(rays_.begin(), rays_.end(), [&](const IVector& r) { return idot(u, r) >= 0; });
}

// ---------------------------------------------------------------------------

ToricDivisor ToricDivisor::operator-() const { return {scale(-1, coeffs)}; }

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) { return {add(a.coeffs, b.coeffs)}; }

ToricDivisor operator*(const Rational& t, const ToricDivisor& d) { return {scale(t, d.coeffs)}; }

std::vector<IVector> minimalize(const ToricCone& cone, std::vector<IVector> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<IVector> kept;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < gens.size() && !dominated; ++j)
      if (j != i && cone.dual_contains(isub(gens[i], gens[j]))) dominated = true;
    if (!dominated) kept.push_back(gens[i]);
  }
  return kept;
}

MonomialIdeal::MonomialIdeal(const ToricCone& cone, std::vector<IVector> gens) {
  if (gens.empty()) throw InputError("ideal has no generators");
  for (const auto& u : gens) {
    if (u.size() != cone.dim()) throw InputError("ideal generator has wrong dimension");
    if (!cone.dual_contains(u)) throw DomainError("ideal generator lies outside the dual cone");
  }
  gens_ = minimalize(cone, std::move(gens));
}

bool MonomialIdeal::is_unit() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const IVector& u) { return gcd_of(u) == 0; });
}

bool MonomialIdeal::is_m_primary(const ToricCone& cone) const {
  if (is_unit()) return false;
  for (const auto& ell : cone.facet_normals()) {
    bool hit = std::any_of(gens_.begin(), gens_.end(), [&](const IVector& u) { return primitive(u) == ell; });
    if (!hit) return false;
  }
  return true;
}

Rational MonomialIdeal::ord(const IVector& v) const {
  long long best = idot(gens_.front(), v);
  for (const auto& u : gens_) best = std::min(best, idot(u, v));
  return Rational(static_cast<long>(best));
}

MonomialIdeal product(const ToricCone& cone, const MonomialIdeal& a, const MonomialIdeal& b) {
  std::vector<IVector> sums;
  for (const auto& u : a.gens())
    for (const auto& w : b.gens()) sums.push_back(iadd(u, w));
  return MonomialIdeal(cone, std::move(sums));
}

MonomialIdeal ideal_sum(const ToricCone& cone, const MonomialIdeal& a, const MonomialIdeal& b) {
  std::vector<IVector> all = a.gens();
  all.insert(all.end(), b.gens().begin(), b.gens().end());
  return MonomialIdeal(cone, std::move(all));
}

MonomialIdeal power(const ToricCone& cone, const MonomialIdeal& a, unsigned k) {
  MonomialIdeal out(cone, {IVector(cone.dim(), 0)});
  for (unsigned i = 0; i < k; ++i) out = product(cone, out, a);
  return out;
}

MonomialIdeal maximal_ideal(const ToricCone& cone) {
  // Irreducible elements of sigma^vee cap M lie in the zonotope spanned by the dual rays.
  IVector lo(cone.dim(), 0), hi(cone.dim(), 0);
  for (const auto& ell : cone.facet_normals())
    for (std::size_t k = 0; k < cone.dim(); ++k) {
      lo[k] += std::min(0LL, ell[k]);
      hi[k] += std::max(0LL, ell[k]);
    }
  std::vector<IVector> pts;
  for_each_point(lo, hi, [&](const IVector& u) {
    if (gcd_of(u) != 0 && cone.dual_contains(u)) pts.push_back(u);
  });
  return MonomialIdeal(cone, std::move(pts));
}

// ---------------------------------------------------------------------------

LPProblem envelope_lp(const ToricCone& cone, const ToricDivisor& d, const IVector& v) {
  if (d.coeffs.size() != cone.rays().size()) throw InputError("divisor length does not match ray count");
  require_dim(cone, v, "envelope");
  LPProblem p;
  p.objective = to_qvector(v);
  for (std::size_t i = 0; i < cone.rays().size(); ++i)
    p.constraints.push_back({to_qvector(cone.rays()[i]), d.coeffs[i]});
  return p;
}

EnvelopeFunction::EnvelopeFunction(ToricCone cone, ToricDivisor d) : cone_(std::move(cone)), d_(std::move(d)) {
  if (d_.coeffs.size() != cone_.rays().size()) throw InputError("divisor length does not match ray count");
}

EnvelopeValue EnvelopeFunction::evaluate(const IVector& v) const {
  require_dim(cone_, v, "envelope");
  if (!cone_.contains(v)) throw DomainError("valuation vector not in the cone");
  auto outcome = lp_max(envelope_lp(cone_, d_, v));
  if (auto* opt = std::get_if<LPOptimal>(&outcome)) return {opt->value, opt->point};
  // Pointed cone keeps the LP feasible, and v in sigma keeps it bounded.
  throw std::logic_error("envelope LP not optimal for v in sigma");
}

Rational envelope_value(const ToricCone& cone, const ToricDivisor& d, const IVector& v) {
  return EnvelopeFunction(cone, d).value(v);
}

NumericallyCartier is_numerically_cartier(const ToricCone& cone, const ToricDivisor& d) {
  if (d.coeffs.size() != cone.rays().size()) throw InputError("divisor length does not match ray count");
  if (auto m = solve_any(rows_of(cone.rays()), d.coeffs)) return {true, *m, std::nullopt, 0};

  IVector total(cone.dim(), 0);
  for (const auto& r : cone.rays()) total = iadd(total, r);
  IVector witness = primitive(total);
  Rational gap = envelope_value(cone, d, witness) + envelope_value(cone, -d, witness);
  if (gap >= 0)
    throw std::logic_error("numerically-Cartier tests disagree: linear system inconsistent but envelope gap is 0");
  return {false, std::nullopt, witness, gap};
}

Rational z_value(const ToricCone& cone, const MonomialIdeal& a, const IVector& v) {
  require_dim(cone, v, "z_value");
  if (!cone.contains(v)) throw DomainError("valuation vector not in the cone");
  return -a.ord(v);
}

Rational samuel_multiplicity(const ToricCone& cone, const MonomialIdeal& a) {
  const std::size_t n = cone.dim();
  if (n > 3) throw UnsupportedError("exact multiplicity is limited to dimension <= 3; use the counting oracle");
  if (!a.is_m_primary(cone)) throw DomainError("ideal is not m-primary");
  const auto& gens = a.gens();
  if (n == 1) return a.ord(cone.rays()[0]);

  // Union of pyramids from the origin over the compact facets of the Newton polyhedron.
  std::set<IVector> seen;
  Rational covolume = 0;
  for_each_subset(gens.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<IVector> diffs;
    for (std::size_t t = 1; t < n; ++t) diffs.push_back(isub(gens[idx[t]], gens[idx[0]]));
    auto ns = null_space(rows_of(diffs));
    if (ns.size() != 1) return;
    IVector nrm = clear_denominators(ns[0]);
    if (!cone.contains_interior(nrm)) {
      for (auto& x : nrm) x = -x;
      if (!cone.contains_interior(nrm)) return;
    }
    long long level = idot(nrm, gens[idx[0]]);
    std::vector<QVector> pyramid{QVector(n)};
    for (const auto& u : gens) {
      long long s = idot(nrm, u);
      if (s < level) return;
      if (s == level) pyramid.push_back(to_qvector(u));
    }
    if (!seen.insert(nrm).second) return;
    covolume += polytope_volume(pyramid, n);
  });
  return covolume * static_cast<long>(factorial(n));
}

Rational mixed_multiplicity(const ToricCone& cone, const std::vector<MonomialIdeal>& ideals) {
  const std::size_t n = cone.dim();
  if (n > 3) throw UnsupportedError("exact multiplicity is limited to dimension <= 3; use the counting oracle");
  if (ideals.size() != n) throw InputError("mixed multiplicity needs exactly n ideals");
  for (const auto& a : ideals)
    if (!a.is_m_primary(cone)) throw DomainError("ideal is not m-primary");

  Rational total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::optional<MonomialIdeal> prod;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      prod = prod ? product(cone, *prod, ideals[i]) : ideals[i];
      ++size;
    }
    Rational e = samuel_multiplicity(cone, *prod);
    if ((static_cast<int>(n) - size) % 2 == 0)
      total += e;
    else
      total -= e;
  }
  return total / static_cast<long>(factorial(n));
}

// ---------------------------------------------------------------------------

std::vector<QVector> section_polyhedron_vertices(const ToricCone& cone, const ToricDivisor& d) {
  if (d.coeffs.size() != cone.rays().size()) throw InputError("divisor length does not match ray count");
  const std::size_t n = cone.dim();
  const auto& rays = cone.rays();
  std::set<QVector> verts;
  for_each_subset(rays.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<IVector> sub;
    QVector rhs;
    for (auto i : idx) {
      sub.push_back(rays[i]);
      rhs.push_back(-d.coeffs[i]);
    }
    QMatrix m = rows_of(sub);
    if (rank(m) != n) return;
    QVector u = solve_linear(m, rhs);
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(u, to_qvector(rays[i])) < -d.coeffs[i]) return;
    verts.insert(u);
  });
  return {verts.begin(), verts.end()};
}

std::vector<IVector> section_generators(const ToricCone& cone, const ToricDivisor& d, long long box_scale) {
  for (const auto& c : d.coeffs)
    if (c.get_den() != 1) throw DomainError("section generators need an integral divisor");
  if (box_scale < 1) throw InputError("box scale must be positive");
  const std::size_t n = cone.dim();
  auto verts = section_polyhedron_vertices(cone, d);

  // Generators lie in conv(vertices) + half-open parallelepiped on the dual rays.
  IVector lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational vmin = verts.front()[k], vmax = verts.front()[k];
    for (const auto& v : verts) {
      vmin = std::min(vmin, v[k]);
      vmax = std::max(vmax, v[k]);
    }
    long long neg = 0, pos = 0;
    for (const auto& ell : cone.facet_normals()) {
      neg += std::min(0LL, ell[k]);
      pos += std::max(0LL, ell[k]);
    }
    lo[k] = floor_q(vmin) + box_scale * neg;
    hi[k] = ceil_q(vmax) + box_scale * pos;
  }
  std::vector<IVector> pts;
  for_each_point(lo, hi, [&](const IVector& u) {
    for (std::size_t i = 0; i < cone.rays().size(); ++i)
      if (Rational(static_cast<long>(idot(u, cone.rays()[i]))) < -d.coeffs[i]) return;
    pts.push_back(u);
  });
  return minimalize(cone, std::move(pts));
}

MonomialIdeal defect_ideal(const ToricCone& cone, const ToricDivisor& d, long long m, long long box_scale) {
  if (cone.dim() > 3) throw UnsupportedError("defect ideals are limited to dimension <= 3");
  if (m < 1) throw InputError("defect ideal multiple must be positive");
  ToricDivisor md = Rational(static_cast<long>(m)) * d;
  auto plus = section_generators(cone, md, box_scale);
  auto minus = section_generators(cone, -md, box_scale);
  std::vector<IVector> sums;
  for (const auto& u : plus)
    for (const auto& w : minus) sums.push_back(iadd(u, w));
  return MonomialIdeal(cone, std::move(sums));
}

Rational izumi_constant(const ToricCone& cone, const IVector& v, const IVector& w) {
  require_dim(cone, v, "izumi");
  require_dim(cone, w, "izumi");
  if (!cone.contains_interior(v) || !cone.contains_interior(w))
    throw DomainError("izumi constant needs interior valuations");
  Rational c = 0;
  for (const auto& ell : cone.facet_normals()) {
    Rational ratio(static_cast<long>(idot(ell, w)), static_cast<unsigned long>(idot(ell, v)));
    ratio.canonicalize();
    c = std::max(c, ratio);
  }
  return c;
}

LogDiscrepancy log_discrepancy_value(const ToricCone& cone, const IVector& v) {
  require_dim(cone, v, "log discrepancy");
  if (!cone.contains_interior(v)) throw DomainError("log discrepancy needs an interior valuation");
  if (gcd_of(v) != 1) throw DomainError("log discrepancy needs a primitive valuation");
  ToricDivisor minus_k{QVector(cone.rays().size(), Rational(1))};
  auto ev = EnvelopeFunction(cone, minus_k).evaluate(v);
  QVector zero(cone.dim());
  if (!lp_feasible(envelope_lp(cone, minus_k, v), zero))
    throw std::logic_error("m = 0 infeasible for -K_X envelope");
  return {ev.value, ev.optimal_m, zero};
}

std::vector<IVector> sample_points(const ToricCone& cone) {
  const auto& rays = cone.rays();
  IVector total(cone.dim(), 0);
  for (const auto& r : rays) total = iadd(total, r);
  std::vector<IVector> out;
  std::set<IVector> seen;
  auto push = [&](const IVector& v) {
    IVector p = primitive(v);
    if (seen.insert(p).second) out.push_back(p);
  };
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) push(iadd(rays[i], rays[j]));
  for (const auto& r : rays) push(iadd(total, r));
  push(total);
  return out;
}

}  // namespace singvol::toric
