#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/arith.hpp"

namespace sslab::padic {

// The ring Z/ell^N.
class Context {
 public:
  Context(i64 ell, int precision);

  i64 ell() const { return ell_; }
  int precision() const { return n_; }
  i64 modulus() const { return modulus_; }

  i64 reduce(i64 x) const { return mod(x, modulus_); }
  i64 add(i64 a, i64 b) const { return reduce(a + b); }
  i64 sub(i64 a, i64 b) const { return reduce(a - b); }
  i64 mul(i64 a, i64 b) const { return mulmod(a, b, modulus_); }
  i64 neg(i64 a) const { return reduce(-a); }

  // ell-adic valuation of a residue; returns precision() for zero.
  int valuation(i64 x) const;
  // ell^k as a residue, 0 <= k <= N.
  i64 power(int k) const { return k >= n_ ? 0 : pow_[static_cast<std::size_t>(k)]; }
  // Inverse of the unit part u of x = ell^v * u.
  i64 unit_inverse(i64 x) const;
  // Exact quotient x / ell^k; requires valuation(x) >= k.
  i64 divide_power(i64 x, int k) const;

  bool operator==(const Context& o) const { return ell_ == o.ell_ && n_ == o.n_; }
  bool operator!=(const Context& o) const { return !(*this == o); }

 private:
  i64 ell_;
  int n_;
  i64 modulus_;
  std::vector<i64> pow_;
};

using Vector = std::vector<i64>;

class Matrix {
 public:
  Matrix(Context ctx, int rows, int cols);
  static Matrix identity(const Context& ctx, int n);
  static Matrix from_rows(const Context& ctx, const std::vector<std::vector<i64>>& rows);
  static Matrix from_columns(const Context& ctx, int rows, const std::vector<Vector>& cols);

  const Context& context() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  i64 at(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, i64 v) { a_[idx(i, j)] = ctx_.reduce(v); }

  Vector column(int j) const;
  Vector row(int i) const;
  std::vector<std::vector<i64>> to_rows() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix scaled(i64 c) const;
  Matrix transpose() const;
  Matrix hconcat(const Matrix& o) const;
  // Block-diagonal sum.
  Matrix direct_sum(const Matrix& o) const;
  // Image under Z/ell^N -> Z/ell^M for M <= N.
  Matrix reduced_to(int precision) const;
  // Inverse over Z/ell^N; throws std::domain_error unless the determinant is a unit.
  Matrix inverse() const;
  i64 determinant() const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j); }
  Context ctx_;
  int rows_, cols_;
  std::vector<i64> a_;
};

struct ColumnReduction {
  Matrix reduced;                  // nonzero columns of the echelon form
  std::vector<int> pivot_rows;     // one per reduced column
  std::vector<int> elementary_divisors;  // length min(rows, cols), clipped at N
};

// ell-adic column echelon form. Columns are ordered by increasing pivot valuation, then pivot
// row; each pivot equals ell^k and entries of a column at later pivot rows lie in [0, ell^k').
ColumnReduction column_reduce(const Matrix& m);

// U * M * V = D with D diagonal (entries ell^d_i), U and V invertible.
struct SmithForm {
  std::vector<int> divisors;  // length min(rows, cols), clipped at N
  Matrix u;
  Matrix v;
};
SmithForm smith_form(const Matrix& m);

// Columns generating {x : M x = 0}.
Matrix kernel(const Matrix& m);

class PrecisionLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A submodule of (Z/ell^N)^r stored in canonical column echelon form, so lattice equality is
// matrix equality.
class Lattice {
 public:
  // Span of the given generators (zero generators are dropped).
  static Lattice span(const Matrix& generators);
  // As span(), but the generators are asserted to be independent: a collapse to fewer than
  // declared_rank nonzero pivots is a precision-loss error.
  static Lattice with_rank(const Matrix& generators, int declared_rank);
  static Lattice zero(const Context& ctx, int ambient_rank);
  static Lattice full(const Context& ctx, int ambient_rank);

  const Context& context() const { return basis_.context(); }
  int ambient_rank() const { return basis_.rows(); }
  int declared_rank() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivot_rows() const { return pivot_rows_; }
  const std::vector<int>& pivot_valuations() const { return pivot_vals_; }

  bool contains(const Vector& v) const;
  bool contains(const Lattice& other) const;
  // log_ell of the number of elements.
  int log_order() const;
  bool is_zero() const { return basis_.cols() == 0; }

  Lattice reduced_to(int precision) const;

  bool operator==(const Lattice& o) const { return basis_ == o.basis_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  bool operator<(const Lattice& o) const;

 private:
  explicit Lattice(ColumnReduction r);
  Matrix basis_;
  std::vector<int> pivot_rows_;
  std::vector<int> pivot_vals_;
};

bool is_pure(const Lattice& x);

Lattice intersect(const Lattice& x, const Lattice& y);

struct SumResult {
  Lattice lattice;
  bool is_direct;
  bool is_pure;
  // project(X) and project(Y) meet trivially; with X, Y pure this forces is_direct and is_pure.
  bool reductions_independent;
};
SumResult sum(const Lattice& x, const Lattice& y);

// Image in F_ell^r, returned as a lattice over Z/ell.
Lattice project_mod_ell(const Lattice& x);

// A * X.
Lattice image(const Matrix& a, const Lattice& x);

struct Pairing {
  Matrix gram;  // e(x, y) = x^T gram y
  bool is_perfect() const;
};
Pairing standard_pairing(const Context& ctx, int r);

// {y : e(x, y) = 0 for every x in X}; rejects non-perfect pairings.
Lattice orthogonal(const Lattice& x, const Pairing& e);

std::string to_string(const Matrix& m);

}  // namespace sslab::padic
