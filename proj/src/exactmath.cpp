#include "singvol/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace singvol {

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                          : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+') {
    throw InputError("not a rational: \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw InputError("zero denominator: \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

QVector to_qvector(const IVector& v) {
  QVector out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::vector<std::string> to_strings(const QVector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IVector& a, const IVector& b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += Rational(static_cast<long>(a[i])) * static_cast<long>(b[i]);
  }
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("add: dimension mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("sub: dimension mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector scale(const Rational& t, const QVector& a) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i];
  return out;
}

long long gcd_of(const IVector& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  return g;
}

IVector primitive(const IVector& v) {
  long long g = gcd_of(v);
  if (g == 0) return v;
  IVector out(v);
  for (auto& x : out) x /= g;
  return out;
}

// ---------------------------------------------------------------------------

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(const std::vector<QVector>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("QMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QVector QMatrix::apply(const QVector& x) const {
  if (x.size() != cols_) throw InputError("QMatrix::apply: shape mismatch");
  QVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

QMatrix QMatrix::multiply(const QMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("QMatrix::multiply: shape mismatch");
  QMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    }
  return out;
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<QVector> solve_any(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw InputError("solve: shape mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

QVector solve_linear(const QMatrix& m, const QVector& b) {
  if (m.rows() != m.cols()) throw InputError("solve_linear: matrix is not square");
  if (b.size() != m.rows()) throw InputError("solve_linear: shape mismatch");
  if (rank(m) != m.rows()) throw DomainError("solve_linear: singular matrix");
  return *solve_any(m, b);
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: matrix is not square");
  QMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::size_t rank(const QMatrix& m) {
  QMatrix a = m;
  return rref(a).size();
}

std::vector<QVector> null_space(const QMatrix& m) {
  QMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector x(m.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

QVector leading_minors(const QMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("leading_minors: matrix is not square");
  QVector minors;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    QMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    minors.push_back(determinant(sub));
  }
  return minors;
}

bool is_negative_definite(const QMatrix& m) {
  if (!m.is_symmetric()) throw InputError("is_negative_definite: matrix is not symmetric");
  auto minors = leading_minors(m);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    int sign = (k % 2 == 0) ? -1 : 1;  // (-1)^(k+1) for the (k+1)-th minor
    if (sgn(minors[k]) != sign) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Simplex on standard form: maximize c.x s.t. E x = f, x >= 0.

namespace {

struct StandardForm {
  QMatrix e;
  QVector f;
  QVector c;
};

struct StandardResult {
  enum class Status { Optimal, Unbounded, Infeasible } status;
  QVector x;
  QVector ray;
};

class Tableau {
 public:
  // Columns: structural [0, nvars), artificial [nvars, nvars + rows).
  explicit Tableau(const StandardForm& sf)
      : nvars_(sf.e.cols()), rows_(sf.e.rows()), t_(rows_, nvars_ + rows_ + 1),
        basis_(rows_), active_(rows_, true) {
    for (std::size_t i = 0; i < rows_; ++i) {
      bool flip = sf.f[i] < 0;
      for (std::size_t j = 0; j < nvars_; ++j) t_(i, j) = flip ? -sf.e(i, j) : sf.e(i, j);
      t_(i, nvars_ + i) = 1;
      t_(i, rhs()) = flip ? -sf.f[i] : sf.f[i];
      basis_[i] = nvars_ + i;
    }
  }

  std::size_t rhs() const { return nvars_ + rows_; }

  // Returns the entering column if unbounded, nullopt at optimum.
  std::optional<std::size_t> optimize(const QVector& cost, std::size_t allowed_cols) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed_cols && !enter; ++j) {
        if (is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i)
          if (active_[i]) reduced -= cost[basis_[i]] * t_(i, j);
        if (reduced > 0) enter = j;
      }
      if (!enter) return std::nullopt;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || t_(i, *enter) <= 0) continue;
        Rational ratio = t_(i, rhs()) / t_(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return enter;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Rational f = t_(i, c);
      for (std::size_t j = 0; j <= rhs(); ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  // After phase I: pivot zero-level artificials out of the basis, or retire redundant rows.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i] || basis_[i] < nvars_) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < nvars_ && !col; ++j)
        if (t_(i, j) != 0) col = j;
      if (col)
        pivot(i, *col);
      else
        active_[i] = false;
    }
  }

  QVector solution() const {
    QVector x(nvars_ + rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (active_[i]) x[basis_[i]] = t_(i, rhs());
    return x;
  }

  QVector ray(std::size_t enter) const {
    QVector d(nvars_);
    d[enter] = 1;
    for (std::size_t i = 0; i < rows_; ++i)
      if (active_[i] && basis_[i] < nvars_) d[basis_[i]] = -t_(i, enter);
    return d;
  }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (active_[i] && basis_[i] == j) return true;
    return false;
  }

  std::size_t nvars_;
  std::size_t rows_;
  QMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

StandardResult solve_standard(const StandardForm& sf) {
  const std::size_t nvars = sf.e.cols();
  const std::size_t rows = sf.e.rows();
  Tableau tab(sf);

  QVector phase1(nvars + rows);
  for (std::size_t i = 0; i < rows; ++i) phase1[nvars + i] = -1;
  tab.optimize(phase1, nvars + rows);
  QVector x = tab.solution();
  for (std::size_t i = 0; i < rows; ++i)
    if (x[nvars + i] != 0) return {StandardResult::Status::Infeasible, {}, {}};
  tab.expel_artificials();

  QVector phase2(nvars + rows);
  std::copy(sf.c.begin(), sf.c.end(), phase2.begin());
  if (auto enter = tab.optimize(phase2, nvars)) {
    QVector sol = tab.solution();
    sol.resize(nvars);
    return {StandardResult::Status::Unbounded, sol, tab.ray(*enter)};
  }
  QVector sol = tab.solution();
  sol.resize(nvars);
  return {StandardResult::Status::Optimal, sol, {}};
}

void check_shape(const LPProblem& p) {
  for (const auto& c : p.constraints)
    if (c.normal.size() != p.dim()) throw InputError("lp_max: constraint dimension mismatch");
}

}  // namespace

bool lp_feasible(const LPProblem& problem, const QVector& point) {
  for (const auto& c : problem.constraints)
    if (dot(point, c.normal) > c.bound) return false;
  return true;
}

LPOutcome lp_max(const LPProblem& problem) {
  check_shape(problem);
  const std::size_t n = problem.dim();
  const std::size_t k = problem.constraints.size();

  // m = m+ - m-, slack s: [A | -A | I] (m+, m-, s) = b.
  StandardForm sf{QMatrix(k, 2 * n + k), QVector(k), QVector(2 * n + k)};
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = problem.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      sf.e(i, j) = c.normal[j];
      sf.e(i, n + j) = -c.normal[j];
    }
    sf.e(i, 2 * n + i) = 1;
    sf.f[i] = c.bound;
  }
  for (std::size_t j = 0; j < n; ++j) {
    sf.c[j] = problem.objective[j];
    sf.c[n + j] = -problem.objective[j];
  }

  auto res = solve_standard(sf);
  auto to_m = [n](const QVector& x) {
    QVector m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = x[j] - x[n + j];
    return m;
  };

  switch (res.status) {
    case StandardResult::Status::Optimal: {
      QVector m = to_m(res.x);
      Rational value = dot(problem.objective, m);
      return LPOptimal{value, m};
    }
    case StandardResult::Status::Unbounded:
      return LPUnbounded{to_m(res.x), to_m(res.ray)};
    case StandardResult::Status::Infeasible:
      break;
  }

  // Farkas: y >= 0, A^T y = 0, b.y = -1.
  StandardForm farkas{QMatrix(n + 1, k), QVector(n + 1), QVector(k)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) farkas.e(j, i) = problem.constraints[i].normal[j];
    farkas.e(n, i) = problem.constraints[i].bound;
  }
  farkas.f[n] = -1;
  auto cert = solve_standard(farkas);
  return LPInfeasible{cert.x};
}

// ---------------------------------------------------------------------------

namespace {

Rational cross2(const QVector& o, const QVector& a, const QVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain, counter-clockwise, no collinear points.
std::vector<QVector> hull2(std::vector<QVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<QVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

QVector cross3(const QVector& a, const QVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational det3(const QVector& a, const QVector& b, const QVector& c) {
  return dot(a, cross3(b, c));
}

Rational volume3(std::vector<QVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 4) return 0;
  {
    std::vector<QVector> diffs;
    for (std::size_t i = 1; i < n; ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (rank(QMatrix(diffs)) < 3) return 0;
  }
  QVector centre(3);
  for (const auto& p : pts) centre = add(centre, p);
  centre = scale(Rational(1, static_cast<unsigned long>(n)), centre);

  std::set<std::vector<std::size_t>> seen;
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        QVector normal = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (normal[0] == 0 && normal[1] == 0 && normal[2] == 0) continue;
        int side = 0;
        bool supporting = true;
        std::vector<std::size_t> on_plane;
        for (std::size_t q = 0; q < n && supporting; ++q) {
          int s = sgn(dot(normal, sub(pts[q], pts[i])));
          if (s == 0) {
            on_plane.push_back(q);
          } else if (side == 0) {
            side = s;
          } else if (s != side) {
            supporting = false;
          }
        }
        if (!supporting || !seen.insert(on_plane).second) continue;

        // Order the facet polygon by projecting out the dominant normal axis.
        std::size_t drop = 0;
        for (std::size_t a = 1; a < 3; ++a)
          if (abs(normal[a]) > abs(normal[drop])) drop = a;
        std::vector<QVector> projected;
        for (auto q : on_plane) {
          QVector p2;
          for (std::size_t a = 0; a < 3; ++a)
            if (a != drop) p2.push_back(pts[q][a]);
          p2.push_back(static_cast<long>(q));  // carry the index along
          projected.push_back(std::move(p2));
        }
        std::vector<QVector> flat;
        for (const auto& p : projected) flat.push_back({p[0], p[1]});
        auto poly = hull2(flat);
        std::vector<QVector> face;
        for (const auto& v : poly)
          for (const auto& p : projected)
            if (p[0] == v[0] && p[1] == v[1]) {
              face.push_back(pts[p[2].get_num().get_ui()]);
              break;
            }
        for (std::size_t t = 1; t + 1 < face.size(); ++t) {
          Rational d = det3(sub(face[0], centre), sub(face[t], centre), sub(face[t + 1], centre));
          total += abs(d);
        }
      }
  return total / 6;
}

}  // namespace

Rational polytope_volume(const std::vector<QVector>& vertices, std::size_t dim) {
  if (dim == 0 || dim > 3) throw UnsupportedError("polytope_volume: dimension must be 1..3");
  for (const auto& v : vertices)
    if (v.size() != dim) throw InputError("polytope_volume: vertex dimension mismatch");
  if (vertices.empty()) return 0;
  if (dim == 1) {
    auto [lo, hi] = std::minmax_element(vertices.begin(), vertices.end(),
                                        [](const QVector& a, const QVector& b) { return a[0] < b[0]; });
    return (*hi)[0] - (*lo)[0];
  }
  if (dim == 2) {
    auto h = hull2(vertices);
    if (h.size() < 3) return 0;
    Rational twice = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
  }
  return volume3(vertices);
}

}  // namespace singvol
