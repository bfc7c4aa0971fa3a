#pragma once

// Normal surface singularities presented by the weighted dual graph of a
// log resolution.

#include <string>
#include <vector>

#include "singvol/exactmath.hpp"

namespace singvol::surface {

struct Vertex {
  long long self_int;
  long long genus;
};

struct Edge {
  std::size_t i;
  std::size_t j;
  long long mult;
};

/// Weighted dual graph with a negative definite intersection matrix.
/// Construction validates every invariant and throws DomainError (with the
/// failing leading minor named) or InputError.
class ResolutionGraph {
 public:
  ResolutionGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const QMatrix& intersection_matrix() const { return matrix_; }

  /// Same graph with vertex i renamed perm[i].
  ResolutionGraph relabel(const std::vector<std::size_t>& perm) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  QMatrix matrix_;
};

/// Coefficients on the exceptional primes, indexed like the graph vertices.
struct ExcDivisor {
  QVector coeffs;
  bool operator==(const ExcDivisor&) const = default;
};

struct ZariskiDecomposition {
  ExcDivisor nef_part;
  ExcDivisor neg_part;
};

enum class SingularityClass { Klt, LcNotKlt, NotLc };

struct Classification {
  SingularityClass kind;
  ExcDivisor log_discrepancy;
};

std::string to_string(SingularityClass c);

/// D.E_j for every exceptional prime E_j.
QVector intersections(const ResolutionGraph& g, const ExcDivisor& d);
/// D.D' via the intersection matrix.
Rational intersect(const ResolutionGraph& g, const ExcDivisor& a, const ExcDivisor& b);

/// K.E_i = 2 g_i - 2 - E_i^2 (adjunction on smooth components).
QVector canonical_intersections(const ResolutionGraph& g);

/// Mumford pull-back: the unique exceptional x with x.E_j = rhs_j.
ExcDivisor numerical_pullback(const ResolutionGraph& g, const QVector& rhs);

/// Discrepancies a_i of K_Y - pi^*K_X.
ExcDivisor discrepancies(const ResolutionGraph& g);

/// A_{Y/X} = K_Y + E - pi^*K_X, i.e. a_i + 1.
ExcDivisor log_discrepancy_divisor(const ResolutionGraph& g);

/// Relative Zariski decomposition d = P + N. Components violating nefness
/// are added to the support of N in batches until P is nef.
ZariskiDecomposition zariski_decompose(const ResolutionGraph& g, const ExcDivisor& d);

/// -P^2 for P the nef part of the log-discrepancy divisor.
Rational volume(const ResolutionGraph& g);

Classification classify(const ResolutionGraph& g);

/// -P^2 for P the nef part of d.
Rational local_volume(const ResolutionGraph& g, const ExcDivisor& d);

// ---------------------------------------------------------------------------
// Standard families.

ResolutionGraph cone_graph(long long genus, long long degree);
/// Cycle of rational curves with the given self-intersections (each <= -2,
/// at least one <= -3). Length 2 uses a double edge; length 1 is a nodal
/// curve carried as arithmetic genus 1.
ResolutionGraph cusp_cycle(const std::vector<long long>& self_ints);
/// "A<n>", "D<n>", "E6", "E7", "E8".
ResolutionGraph duval(const std::string& type);
ResolutionGraph simple_elliptic(long long degree);

}  // namespace singvol::surface
