#include "singvol/endo.hpp"

#include <algorithm>
#include <cstdlib>

namespace singvol::endo {

namespace {

std::string join(const IVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

QMatrix to_qmatrix(const Matrix& a) {
  std::vector<QVector> rows;
  for (const auto& r : a) rows.push_back(to_qvector(r));
  return QMatrix(rows);
}

IVector matvec(const Matrix& a, const IVector& v) {
  IVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

}  // namespace

ToricEndo::ToricEndo(Matrix a, toric::ToricCone cone) : a_(std::move(a)), cone_(std::move(cone)) {
  const std::size_t n = cone_.dim();
  if (a_.size() != n) throw InputError("endomorphism matrix has wrong size");
  for (const auto& r : a_)
    if (r.size() != n) throw InputError("endomorphism matrix has wrong size");
  if (determinant(to_qmatrix(a_)) == 0) throw DomainError("endomorphism matrix is singular");

  const auto& rays = cone_.rays();
  std::vector<bool> hit(rays.size(), false);
  for (const auto& r : rays) {
    IVector image = matvec(a_, r);
    long long g = gcd_of(image);
    IVector prim = primitive(image);
    auto it = std::find(rays.begin(), rays.end(), prim);
    if (it == rays.end()) throw DomainError("A does not map the ray " + join(r) + " onto a ray of the cone");
    auto j = static_cast<std::size_t>(it - rays.begin());
    if (hit[j]) throw DomainError("A does not permute the rays of the cone");
    hit[j] = true;
    target_.push_back(j);
    scale_.push_back(g);
  }
}

IVector ToricEndo::apply(const IVector& v) const { return matvec(a_, v); }

Matrix compose(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, IVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

long long degree(const ToricEndo& e) {
  Rational det = determinant(to_qmatrix(e.matrix()));
  return std::labs(det.get_num().get_si());
}

toric::ToricDivisor pullback_divisor(const ToricEndo& e, const toric::ToricDivisor& d) {
  if (d.coeffs.size() != e.cone().rays().size()) throw InputError("divisor length does not match ray count");
  QVector out;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i)
    out.push_back(Rational(static_cast<long>(e.scale(i))) * d.coeffs[e.target(i)]);
  return {out};
}

toric::MonomialIdeal pullback_ideal(const ToricEndo& e, const toric::MonomialIdeal& a) {
  const auto& m = e.matrix();
  std::vector<IVector> gens;
  for (const auto& u : a.gens()) {
    IVector t(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j) t[i] += m[j][i] * u[j];
    gens.push_back(std::move(t));
  }
  return toric::MonomialIdeal(e.cone(), std::move(gens));
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Report check_push_pull(const ToricEndo& e, const std::vector<IVector>& samples, const toric::ToricDivisor& d) {
  Report report;
  const auto& cone = e.cone();
  toric::EnvelopeFunction env(cone, d);
  toric::EnvelopeFunction pulled(cone, pullback_divisor(e, d));
  const Rational deg = static_cast<long>(degree(e));
  for (const auto& v : samples) {
    IVector av = e.apply(v);
    Rational lhs = pulled.value(v);
    Rational rhs = env.value(av);
    report.checks.push_back({"env_commutes" + join(v), lhs == rhs,
                             "Env(phi^*D)(v) = " + to_string(lhs) + ", Env(D)(Av) = " + to_string(rhs)});

    long long t = gcd_of(av);
    IVector w = primitive(av);
    Rational residue = deg / static_cast<long>(t);
    Rational pushed = residue * lhs;
    Rational expected = deg * env.value(w);
    report.checks.push_back({"push_pull" + join(v), pushed == expected,
                             "phi_*phi^* = " + to_string(pushed) + ", e(phi) * Env(D)(w) = " +
                                 to_string(expected)});
  }
  return report;
}

Report check_intersection_scaling(const ToricEndo& e, const std::vector<toric::MonomialIdeal>& ideals) {
  Report report;
  std::vector<toric::MonomialIdeal> pulled;
  for (const auto& a : ideals) pulled.push_back(pullback_ideal(e, a));
  Rational before = toric::mixed_multiplicity(e.cone(), ideals);
  Rational after = toric::mixed_multiplicity(e.cone(), pulled);
  Rational expected = Rational(static_cast<long>(degree(e))) * before;
  report.checks.push_back({"mixed_multiplicity_scaling", after == expected,
                           "e(phi^*a) = " + to_string(after) + ", e(phi) * e(a) = " + to_string(expected)});
  return report;
}

Report volume_monotonicity(const SurfaceCover& c) {
  if (c.genus < 0 || c.degree < 1 || c.cover_degree < 1) throw InputError("surface cover: invalid parameters");
  Report report;
  Rational base = surface::volume(surface::cone_graph(c.genus, c.degree));
  Rational cover =
      surface::volume(surface::cone_graph(c.cover_degree * (c.genus - 1) + 1, c.cover_degree * c.degree));
  Rational expected = Rational(static_cast<long>(c.cover_degree)) * base;
  report.checks.push_back({"cover_multiplicativity", cover == expected,
                           "Vol(X) = " + to_string(cover) + ", e * Vol(Y) = " + to_string(expected)});
  report.checks.push_back({"monotonicity", cover >= expected, "Vol(X) >= e * Vol(Y)"});
  return report;
}

Report volume_monotonicity(const ToricEndo& e) {
  Report report;
  const auto& cone = e.cone();
  bool nonneg = true;
  std::string detail;
  for (const auto& v : toric::sample_points(cone)) {
    if (!cone.contains_interior(v)) continue;
    for (const auto& u : {v, primitive(e.apply(v))}) {
      auto ld = toric::log_discrepancy_value(cone, u);
      if (ld.value < 0) {
        nonneg = false;
        detail = "A" + join(u) + " = " + to_string(ld.value);
      }
    }
  }
  report.checks.push_back({"log_discrepancy_nonnegative", nonneg, nonneg ? "m = 0 certifies A >= 0" : detail});
  Rational vol_x = 0, vol_y = 0;
  Rational rhs = Rational(static_cast<long>(degree(e))) * vol_y;
  report.checks.push_back({"monotonicity", nonneg && vol_x >= rhs,
                           "Vol(X) = 0 >= e(phi) * Vol(Y) = " + to_string(rhs)});
  return report;
}

}  // namespace singvol::endo
