#pragma once

// Exact rational linear algebra: Gauss-Jordan solving with full solution-set
// classification, dependence certificates, and a phase-1 simplex for
// feasibility of {x >= 0 : A x = b}.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "carkit/rational.hpp"

namespace carkit {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  /// Zero matrix.  Throws DimensionMismatch when either dimension is 0.
  RationalMatrix(std::size_t rows, std::size_t cols);

  /// Throws DimensionMismatch on ragged or empty input.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;
  std::vector<RationalVector> row_vectors() const;
  RationalMatrix select_rows(const std::vector<std::size_t>& indices) const;
  RationalMatrix transpose() const;

  /// Throws DimensionMismatch.
  RationalVector multiply(const RationalVector& x) const;

  std::string describe() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  RationalVector data_;
};

struct LinSolveResult {
  enum class Kind { NoSolution, Unique, Family };

  Kind kind = Kind::NoSolution;
  RationalVector particular;               // empty for NoSolution
  std::vector<RationalVector> nullspace;   // nonempty only for Family
};

const char* to_string(LinSolveResult::Kind kind);

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);
std::vector<RationalVector> nullspace(const RationalMatrix& a);

/// Throws DimensionMismatch when b.size() != A.rows().
LinSolveResult solve(const RationalMatrix& a, const RationalVector& b);

struct DependenceCertificate {
  enum class Kind { None, LinearNotAffine, AffineNonnegative };

  Kind kind = Kind::None;
  RationalVector coefficients;               // lambda, one per row
  RationalVector combination;                // u = sum lambda_i v_i
  std::optional<std::size_t> witness_column; // j* for AffineNonnegative

  explicit operator bool() const { return kind != Kind::None; }
};

const char* to_string(DependenceCertificate::Kind kind);

/// A lambda with sum(lambda) = 1 and sum(lambda_i v_i) = 0 when the rows are
/// linearly but not affinely dependent; otherwise Kind::None.
DependenceCertificate affine_dependence(const std::vector<RationalVector>& rows);

/// A lambda with sum(lambda) = 0 whose combination u is componentwise >= 0
/// with u[j_star] >= 1, or Kind::None when no such lambda exists.
DependenceCertificate nonneg_affine_combination(const std::vector<RationalVector>& rows,
                                                std::size_t j_star);

/// Re-checks a certificate against the rows with exact arithmetic.
bool verify_certificate(const DependenceCertificate& cert, const std::vector<RationalVector>& rows);

struct LpFeasibility {
  bool feasible = false;
  RationalVector point;  // x >= 0 with A x = b when feasible
  std::size_t pivots = 0;
};

/// Phase-1 simplex with Bland's rule over exact rationals.
LpFeasibility find_feasible_point(const RationalMatrix& a, const RationalVector& b);

}  // namespace carkit
