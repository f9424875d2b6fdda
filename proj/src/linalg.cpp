#include "carkit/linalg.hpp"

#include <sstream>

#include "carkit/errors.hpp"

namespace carkit {

namespace {

[[noreturn]] void mismatch(const std::string& msg) {
  throw CarkitError(ErrorCode::DimensionMismatch, msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {
  if (rows == 0 || cols == 0) mismatch("matrix dimensions must be positive");
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty() || rows.front().empty()) mismatch("matrix needs at least one row and column");
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) mismatch("ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) (m(i, j) = rows[i][j]).canonicalize();
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<RationalVector> RationalMatrix::row_vectors() const {
  std::vector<RationalVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

RationalMatrix RationalMatrix::select_rows(const std::vector<std::size_t>& indices) const {
  RationalMatrix m(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(indices.at(r), j);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalVector RationalMatrix::multiply(const RationalVector& x) const {
  if (x.size() != cols_) mismatch("vector length does not match matrix columns");
  RationalVector y(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

std::string RationalMatrix::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Elimination

const char* to_string(LinSolveResult::Kind kind) {
  switch (kind) {
    case LinSolveResult::Kind::NoSolution: return "NoSolution";
    case LinSolveResult::Kind::Unique: return "Unique";
    case LinSolveResult::Kind::Family: return "Family";
  }
  return "?";
}

Echelon rref(const RationalMatrix& a) {
  RationalMatrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& a) { return rref(a).pivots.size(); }

namespace {

// Basis of {x : R x = 0} read off a reduced echelon form over the first n columns.
std::vector<RationalVector> kernel_from_echelon(const Echelon& e, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivots)
    if (c < n) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.pivots[r] < n) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<RationalVector> nullspace(const RationalMatrix& a) {
  return kernel_from_echelon(rref(a), a.cols());
}

LinSolveResult solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) mismatch("right-hand side length does not match matrix rows");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const Echelon e = rref(aug);
  LinSolveResult out;
  if (!e.pivots.empty() && e.pivots.back() == n) return out;  // 0 = nonzero row

  out.particular.assign(n, Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.particular[e.pivots[r]] = e.reduced(r, n);
  out.nullspace = kernel_from_echelon(e, n);
  out.kind = out.nullspace.empty() ? LinSolveResult::Kind::Unique : LinSolveResult::Kind::Family;
  return out;
}

// ---------------------------------------------------------------------------
// Dependence certificates

const char* to_string(DependenceCertificate::Kind kind) {
  switch (kind) {
    case DependenceCertificate::Kind::None: return "None";
    case DependenceCertificate::Kind::LinearNotAffine: return "LinearNotAffine";
    case DependenceCertificate::Kind::AffineNonnegative: return "AffineNonnegative";
  }
  return "?";
}

namespace {

RationalVector combine(const std::vector<RationalVector>& rows, const RationalVector& lambda) {
  RationalVector u(rows.front().size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (lambda[i] != 0)
      for (std::size_t j = 0; j < u.size(); ++j) u[j] += lambda[i] * rows[i][j];
  return u;
}

void check_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty() || rows.front().empty()) mismatch("need at least one nonempty row");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) mismatch("ragged rows");
}

}  // namespace

DependenceCertificate affine_dependence(const std::vector<RationalVector>& rows) {
  check_rows(rows);
  // lambda ranges over the kernel of V^T (columns are the rows); some basis
  // vector has nonzero sum iff the kernel is not inside the hyperplane sum = 0.
  const auto kernel = nullspace(RationalMatrix::from_rows(rows).transpose());
  DependenceCertificate cert;
  for (const auto& v : kernel) {
    const Rational s = sum(v);
    if (s == 0) continue;
    cert.kind = DependenceCertificate::Kind::LinearNotAffine;
    cert.coefficients = v;
    for (auto& x : cert.coefficients) x /= s;
    cert.combination = combine(rows, cert.coefficients);
    break;
  }
  return cert;
}

DependenceCertificate nonneg_affine_combination(const std::vector<RationalVector>& rows,
                                                std::size_t j_star) {
  check_rows(rows);
  const std::size_t k = rows.size(), n = rows.front().size();
  if (j_star >= n) mismatch("witness column out of range");

  // Variables: lambda+ (k), lambda- (k), slack s_j (n) with s_{j*} shifted by 1.
  // Rows: sum(lambda) = 0; for each column j: (sum lambda_i v_ij) - s_j = [j == j*].
  const std::size_t nv = 2 * k + n;
  RationalMatrix a(1 + n, nv);
  RationalVector b(1 + n, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    a(0, i) = 1;
    a(0, k + i) = -1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      a(1 + j, i) = rows[i][j];
      a(1 + j, k + i) = -rows[i][j];
    }
    a(1 + j, 2 * k + j) = -1;
    if (j == j_star) b[1 + j] = 1;
  }
  const LpFeasibility lp = find_feasible_point(a, b);
  DependenceCertificate cert;
  if (!lp.feasible) return cert;
  cert.kind = DependenceCertificate::Kind::AffineNonnegative;
  cert.witness_column = j_star;
  cert.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) cert.coefficients[i] = lp.point[i] - lp.point[k + i];
  cert.combination = combine(rows, cert.coefficients);
  return cert;
}

bool verify_certificate(const DependenceCertificate& cert, const std::vector<RationalVector>& rows) {
  using Kind = DependenceCertificate::Kind;
  if (cert.kind == Kind::None) return true;
  if (rows.empty() || cert.coefficients.size() != rows.size()) return false;
  const RationalVector u = combine(rows, cert.coefficients);
  if (u != cert.combination) return false;
  if (cert.kind == Kind::LinearNotAffine)
    return !is_zero_vector(cert.coefficients) && sum(cert.coefficients) != 0 && is_zero_vector(u);
  if (!cert.witness_column || *cert.witness_column >= u.size()) return false;
  if (sum(cert.coefficients) != 0) return false;
  for (const auto& x : u)
    if (x < 0) return false;
  return u[*cert.witness_column] > 0;
}

// ---------------------------------------------------------------------------
// Phase-1 simplex

LpFeasibility find_feasible_point(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) mismatch("right-hand side length does not match constraint rows");
  const std::size_t m = a.rows(), n = a.cols(), total = n + m;

  // Tableau [A | I | b] with b >= 0; artificials start in the basis.
  std::vector<RationalVector> t(m, RationalVector(total + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a(i, j)) : a(i, j);
    t[i][n + i] = 1;
    t[i][total] = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  // Reduced costs for min sum(artificials); last entry is -objective.
  RationalVector cost(total + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= total; ++j)
      if (j < n || j == total) cost[j] -= t[i][j];

  LpFeasibility out;
  for (;;) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == total) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][total] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == m) break;  // cannot happen: phase-1 objective is bounded below

    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= total; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++out.pivots;
  }

  if (cost[total] != 0) return out;  // optimum -sum(artificials) < 0
  out.feasible = true;
  out.point.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) out.point[basis[i]] = t[i][total];
  return out;
}

}  // namespace carkit
