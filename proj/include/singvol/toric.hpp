#pragma once

// Affine toric singularities: nef envelopes as exact LPs over a cone,
// monomial ideals and their multiplicities, defect ideals, Izumi constants.

#include <optional>
#include <vector>

#include "singvol/exactmath.hpp"

namespace singvol::toric {

/// Strongly convex, full-dimensional rational cone sigma in Z^n given by
/// its primitive extreme rays. For n <= 3 every proper face must be smooth
/// (isolated singularity); for n >= 4 that check is skipped and
/// isolated_checked() reports false.
class ToricCone {
 public:
  ToricCone(std::size_t dim, std::vector<IVector> rays);

  std::size_t dim() const { return dim_; }
  const std::vector<IVector>& rays() const { return rays_; }
  /// Primitive inner facet normals; these are the rays of the dual cone.
  const std::vector<IVector>& facet_normals() const { return facets_; }
  bool isolated_checked() const { return isolated_checked_; }

  bool contains(const IVector& v) const;
  bool contains_interior(const IVector& v) const;
  /// u in sigma^vee, i.e. <u, v_i> >= 0 for every ray.
  bool dual_contains(const IVector& u) const;

 private:
  std::size_t dim_;
  std::vector<IVector> rays_;
  std::vector<IVector> facets_;
  bool isolated_checked_ = true;
};

/// D = sum d_i D_i, one coefficient per ray.
struct ToricDivisor {
  QVector coeffs;
  ToricDivisor operator-() const;
  bool operator==(const ToricDivisor&) const = default;
};

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b);
ToricDivisor operator*(const Rational& t, const ToricDivisor& d);

/// Monomial ideal in C[sigma^vee cap M], kept minimally generated.
class MonomialIdeal {
 public:
  MonomialIdeal(const ToricCone& cone, std::vector<IVector> gens);

  const std::vector<IVector>& gens() const { return gens_; }
  std::size_t dim() const { return gens_.front().size(); }
  bool is_unit() const;
  /// True iff the monomial zero locus is the torus-fixed point alone.
  bool is_m_primary(const ToricCone& cone) const;
  /// ord_v = min over generators of <u, v>.
  Rational ord(const IVector& v) const;

 private:
  std::vector<IVector> gens_;
};

/// Drops duplicates and generators dominated modulo sigma^vee.
std::vector<IVector> minimalize(const ToricCone& cone, std::vector<IVector> gens);

MonomialIdeal product(const ToricCone& cone, const MonomialIdeal& a, const MonomialIdeal& b);
/// The maximal monomial ideal; its minimal generators are the Hilbert basis of sigma^vee.
MonomialIdeal maximal_ideal(const ToricCone& cone);
MonomialIdeal power(const ToricCone& cone, const MonomialIdeal& a, unsigned k);
MonomialIdeal ideal_sum(const ToricCone& cone, const MonomialIdeal& a, const MonomialIdeal& b);

struct EnvelopeValue {
  Rational value;
  QVector optimal_m;
};

/// Env_X(D) viewed as a function on toric valuations in sigma:
/// v |-> max{<m, v> : <m, v_i> <= d_i for all rays}.
class EnvelopeFunction {
 public:
  EnvelopeFunction(ToricCone cone, ToricDivisor d);

  const ToricCone& cone() const { return cone_; }
  const ToricDivisor& divisor() const { return d_; }

  /// Throws DomainError when v is outside sigma.
  EnvelopeValue evaluate(const IVector& v) const;
  Rational value(const IVector& v) const { return evaluate(v).value; }

 private:
  ToricCone cone_;
  ToricDivisor d_;
};

LPProblem envelope_lp(const ToricCone& cone, const ToricDivisor& d, const IVector& v);

Rational envelope_value(const ToricCone& cone, const ToricDivisor& d, const IVector& v);

struct NumericallyCartier {
  bool cartier;
  /// m with <m, v_i> = d_i, when cartier.
  std::optional<QVector> linear_form;
  /// Interior v where Env(D)(v) + Env(-D)(v) < 0, when not cartier.
  std::optional<IVector> witness;
  /// Env(D)(witness) + Env(-D)(witness); zero when cartier.
  Rational gap;
};

NumericallyCartier is_numerically_cartier(const ToricCone& cone, const ToricDivisor& d);

/// Coefficient of Z(a) at ord_v, i.e. -ord_v(a). Throws DomainError if v is outside sigma.
Rational z_value(const ToricCone& cone, const MonomialIdeal& a, const IVector& v);

/// e(a) = n! * covolume of the Newton polyhedron, n <= 3.
Rational samuel_multiplicity(const ToricCone& cone, const MonomialIdeal& a);

/// e(a_1, ..., a_n) by polarization over subset products, n <= 3.
Rational mixed_multiplicity(const ToricCone& cone, const std::vector<MonomialIdeal>& ideals);

/// Vertices of {u : <u, v_i> >= -d_i}.
std::vector<QVector> section_polyhedron_vertices(const ToricCone& cone, const ToricDivisor& d);

/// Minimal module generators of O_X(D) for integral D. box_scale widens the
/// search box; the result must not depend on it.
std::vector<IVector> section_generators(const ToricCone& cone, const ToricDivisor& d,
                                        long long box_scale = 1);

/// O_X(mD) * O_X(-mD), minimally generated. Requires integral D, m >= 1, n <= 3.
MonomialIdeal defect_ideal(const ToricCone& cone, const ToricDivisor& d, long long m,
                           long long box_scale = 1);

/// min{c : c v - w in sigma} for v, w in the interior of sigma.
Rational izumi_constant(const ToricCone& cone, const IVector& v, const IVector& w);

struct LogDiscrepancy {
  Rational value;
  QVector optimal_m;
  /// m = 0 is feasible for the envelope LP, so value >= 0.
  QVector nonnegativity_certificate;
};

/// A(v) = Env_X(-K_X)(v) for a primitive interior v (toric K_X = -sum D_i).
LogDiscrepancy log_discrepancy_value(const ToricCone& cone, const IVector& v);

/// Deterministic valuations: pairwise ray sums, (sum of all rays) + each ray,
/// and the sum of all rays, each reduced to primitive and deduplicated.
std::vector<IVector> sample_points(const ToricCone& cone);

}  // namespace singvol::toric
