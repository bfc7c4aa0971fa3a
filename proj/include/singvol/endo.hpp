#pragma once

// Finite toric endomorphisms given by an integer matrix A with A(sigma) = sigma,
// and the transformation laws they satisfy.

#include <string>
#include <vector>

#include "singvol/surface.hpp"
#include "singvol/toric.hpp"

namespace singvol::endo {

using Matrix = std::vector<IVector>;

class ToricEndo {
 public:
  /// Throws DomainError unless A is nonsingular and permutes the rays of sigma up to
  /// positive scaling.
  ToricEndo(Matrix a, toric::ToricCone cone);

  const Matrix& matrix() const { return a_; }
  const toric::ToricCone& cone() const { return cone_; }

  IVector apply(const IVector& v) const;
  /// A v_i = scale(i) * v_{target(i)}.
  std::size_t target(std::size_t i) const { return target_[i]; }
  long long scale(std::size_t i) const { return scale_[i]; }

 private:
  Matrix a_;
  toric::ToricCone cone_;
  std::vector<std::size_t> target_;
  std::vector<long long> scale_;
};

Matrix compose(const Matrix& a, const Matrix& b);

/// e(phi) = |det A|.
long long degree(const ToricEndo& e);

toric::ToricDivisor pullback_divisor(const ToricEndo& e, const toric::ToricDivisor& d);

/// Generators A^T u.
toric::MonomialIdeal pullback_ideal(const ToricEndo& e, const toric::MonomialIdeal& a);

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  bool passed() const;
};

/// At every sample valuation: Env(phi^* D)(v) = Env(D)(Av), and the push-pull identity
/// f * ord_v(phi^* Env D) = e(phi) * ord_w(Env D) with Av = t w, f = e(phi) / t.
Report check_push_pull(const ToricEndo& e, const std::vector<IVector>& samples, const toric::ToricDivisor& d);

/// e(phi^* a_1, ..., phi^* a_n) = e(phi) * e(a_1, ..., a_n).
Report check_intersection_scaling(const ToricEndo& e, const std::vector<toric::MonomialIdeal>& ideals);

struct SurfaceCover {
  long long genus;
  long long degree;
  long long cover_degree;
};

/// Cone over a degree-d genus-g curve and its degree-e cyclic cover, both sides computed
/// from resolution graphs: Vol(cone(e(g-1)+1, e d)) = e * Vol(cone(g, d)).
Report volume_monotonicity(const SurfaceCover& c);

/// Toric germ with an endomorphism: A(v) >= 0 at every interior sample on both sides,
/// so both volumes vanish and Vol(X) >= e(phi) Vol(Y) reads 0 >= e * 0.
Report volume_monotonicity(const ToricEndo& e);

}  // namespace singvol::endo
