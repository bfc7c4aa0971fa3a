#pragma once

// Exact rational arithmetic, dense linear algebra, simplex LP and
// low-dimensional convex hull volume.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "singvol/errors.hpp"

namespace singvol {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using IVector = std::vector<long long>;

/// Parses "p", "-p" or "p/q" into lowest terms. Throws InputError on junk or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (q > 1) or "p".
std::string to_string(const Rational& q);

QVector to_qvector(const IVector& v);
std::vector<std::string> to_strings(const QVector& v);

Rational dot(const QVector& a, const QVector& b);
Rational dot(const IVector& a, const IVector& b);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const Rational& t, const QVector& a);

long long gcd_of(const IVector& v);
/// Divides out the gcd of the entries. The zero vector is returned unchanged.
IVector primitive(const IVector& v);

/// Dense row-major matrix of rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  explicit QMatrix(const std::vector<QVector>& rows);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  QVector row(std::size_t i) const;
  QMatrix transpose() const;
  QVector apply(const QVector& x) const;
  QMatrix multiply(const QMatrix& other) const;
  bool is_symmetric() const;
  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact x with Mx = b. Throws DomainError if M is singular, InputError on shape mismatch.
QVector solve_linear(const QMatrix& m, const QVector& b);

/// Solves Mx = b for a possibly rectangular or rank-deficient M. nullopt if inconsistent.
std::optional<QVector> solve_any(const QMatrix& m, const QVector& b);

Rational determinant(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of {x : Mx = 0}.
std::vector<QVector> null_space(const QMatrix& m);

/// Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
QVector leading_minors(const QMatrix& m);

/// Sylvester test: (-1)^k * minor_k > 0 for all k. Throws InputError if M is not symmetric.
bool is_negative_definite(const QMatrix& m);

// ---------------------------------------------------------------------------
// Linear programming: maximize <objective, m> subject to <m, normal_i> <= bound_i,
// m free.

struct LPConstraint {
  QVector normal;
  Rational bound;
};

struct LPProblem {
  QVector objective;
  std::vector<LPConstraint> constraints;

  std::size_t dim() const { return objective.size(); }
};

struct LPOptimal {
  Rational value;
  QVector point;
};

/// Direction r with <r, normal_i> <= 0 for all i and <objective, r> > 0,
/// plus a feasible starting point.
struct LPUnbounded {
  QVector feasible_point;
  QVector ray;
};

/// Farkas multipliers y >= 0 with sum y_i normal_i = 0 and sum y_i bound_i < 0.
struct LPInfeasible {
  QVector multipliers;
};

using LPOutcome = std::variant<LPOptimal, LPUnbounded, LPInfeasible>;

/// Two-phase simplex with Bland's rule over exact rationals.
/// Throws InputError on dimension mismatch.
LPOutcome lp_max(const LPProblem& problem);

/// True iff the point satisfies every constraint exactly.
bool lp_feasible(const LPProblem& problem, const QVector& point);

// ---------------------------------------------------------------------------

/// Exact volume of the convex hull of the given points in R^dim, dim in 1..3.
/// Hulls that do not span dim have volume 0. Throws UnsupportedError for dim > 3.
Rational polytope_volume(const std::vector<QVector>& vertices, std::size_t dim);

}  // namespace singvol
