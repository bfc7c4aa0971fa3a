#pragma once

// Brute-force reference computations: lattice-point colengths of ideal powers
// and LP vertex enumeration. Slow, simple, and independent of the exact engines.

#include <utility>
#include <vector>

#include "singvol/exactmath.hpp"
#include "singvol/toric.hpp"

namespace singvol::oracle {

inline constexpr unsigned kDefaultPowerCap = 64;

/// dim(O / a^k) for the honest k-th power (not its integral closure).
long long colength(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned k,
                   unsigned cap = kDefaultPowerCap);

/// Colengths for k = 0..kmax in one pass.
std::vector<long long> colengths(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned kmax,
                                 unsigned cap = kDefaultPowerCap);

struct CountReport {
  std::vector<unsigned> ks;
  std::vector<long long> colengths;
  /// n! * colength(k) / k^n
  std::vector<Rational> fitted;
  /// n-th forward difference of the colength ending at kmax; equals e(a) once the
  /// Hilbert-Samuel function is polynomial on the window.
  Rational finite_difference;
  /// C in |fitted(k) - e| <= C / k, pinned as n * D * finite_difference with D the
  /// largest sup-norm of a generator.
  Rational error_constant;

  Rational final_fitted() const { return fitted.back(); }
  bool within_budget(const Rational& e) const;
};

CountReport multiplicity_estimate(const toric::ToricCone& cone, const toric::MonomialIdeal& a, unsigned kmax,
                                  unsigned cap = kDefaultPowerCap);

/// Every basic feasible point (intersection of dim constraints) with its objective value.
/// Limited to 12 constraints and dimension 4.
std::vector<std::pair<QVector, Rational>> lp_vertex_enumerate(const LPProblem& problem);

/// max value over lp_vertex_enumerate, nullopt if there are no vertices.
std::optional<Rational> lp_vertex_max(const LPProblem& problem);

}  // namespace singvol::oracle
