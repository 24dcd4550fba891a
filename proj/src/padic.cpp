#include "sslab/padic.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sslab::padic {

Context::Context(i64 ell, int precision) : ell_(ell), n_(precision) {
  if (ell < 2 || !is_prime(static_cast<u64>(ell))) throw std::invalid_argument("Context: ell must be prime");
  if (precision < 1) throw std::invalid_argument("Context: precision must be positive");
  pow_.resize(static_cast<std::size_t>(precision) + 1);
  pow_[0] = 1;
  for (int k = 1; k <= precision; ++k) {
    i64 next = 0;
    if (__builtin_mul_overflow(pow_[static_cast<std::size_t>(k - 1)], ell, &next) || next > (i64{1} << 62)) {
      throw std::invalid_argument("Context: ell^N exceeds 2^62");
    }
    pow_[static_cast<std::size_t>(k)] = next;
  }
  modulus_ = pow_[static_cast<std::size_t>(precision)];
}

int Context::valuation(i64 x) const {
  x = reduce(x);
  if (x == 0) return n_;
  int v = 0;
  while (x % ell_ == 0) {
    x /= ell_;
    ++v;
  }
  return v;
}

i64 Context::unit_inverse(i64 x) const {
  x = reduce(x);
  if (x == 0) throw std::domain_error("unit_inverse of zero");
  while (x % ell_ == 0) x /= ell_;
  return invmod(x, modulus_);
}

i64 Context::divide_power(i64 x, int k) const {
  x = reduce(x);
  if (k == 0) return x;
  if (valuation(x) < k) throw std::domain_error("divide_power: valuation too small");
  return x / pow_[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------

Matrix::Matrix(Context ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
}

Matrix Matrix::identity(const Context& ctx, int n) {
  Matrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Context& ctx, const std::vector<std::vector<i64>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(ctx, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("from_rows: ragged input");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

Matrix Matrix::from_columns(const Context& ctx, int rows, const std::vector<Vector>& cols) {
  Matrix m(ctx, rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    const auto& c = cols[static_cast<std::size_t>(j)];
    if (static_cast<int>(c.size()) != rows) throw std::invalid_argument("from_columns: wrong length");
    for (int i = 0; i < rows; ++i) m.set(i, j, c[static_cast<std::size_t>(i)]);
  }
  return m;
}

Vector Matrix::column(int j) const {
  Vector v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = at(i, j);
  return v;
}

Vector Matrix::row(int i) const {
  Vector v(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) v[static_cast<std::size_t>(j)] = at(i, j);
  return v;
}

std::vector<std::vector<i64>> Matrix::to_rows() const {
  std::vector<std::vector<i64>> out;
  out.reserve(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix +: shape mismatch");
  Matrix r(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ctx_.add(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix -: shape mismatch");
  Matrix r(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ctx_.sub(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (ctx_ != o.ctx_ || cols_ != o.rows_) throw std::invalid_argument("Matrix *: shape mismatch");
  Matrix r(ctx_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      i64 aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        r.a_[r.idx(i, j)] = ctx_.add(r.a_[r.idx(i, j)], ctx_.mul(aik, o.at(k, j)));
      }
    }
  }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Matrix * vector: shape mismatch");
  Vector out(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    i64 acc = 0;
    for (int j = 0; j < cols_; ++j) acc = ctx_.add(acc, ctx_.mul(at(i, j), v[static_cast<std::size_t>(j)]));
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

Matrix Matrix::scaled(i64 c) const {
  Matrix r(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ctx_.mul(a_[k], c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.a_[r.idx(j, i)] = at(i, j);
  return r;
}

Matrix Matrix::hconcat(const Matrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_) throw std::invalid_argument("hconcat: shape mismatch");
  Matrix r(ctx_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.a_[r.idx(i, j)] = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.a_[r.idx(i, cols_ + j)] = o.at(i, j);
  }
  return r;
}

Matrix Matrix::direct_sum(const Matrix& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("direct_sum: context mismatch");
  Matrix r(ctx_, rows_ + o.rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.a_[r.idx(i, j)] = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) r.a_[r.idx(rows_ + i, cols_ + j)] = o.at(i, j);
  return r;
}

Matrix Matrix::reduced_to(int precision) const {
  if (precision > ctx_.precision()) throw std::invalid_argument("reduced_to: cannot raise precision");
  Context c(ctx_.ell(), precision);
  Matrix r(c, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = c.reduce(a_[k]);
  return r;
}

i64 Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
  Matrix d = *this;
  i64 det = 1;
  const int n = rows_;
  for (int t = 0; t < n; ++t) {
    int best = ctx_.precision(), bi = -1, bj = -1;
    for (int i = t; i < n; ++i)
      for (int j = t; j < n; ++j) {
        int v = ctx_.valuation(d.at(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return 0;
    if (bi != t) {
      for (int j = 0; j < n; ++j) std::swap(d.a_[d.idx(t, j)], d.a_[d.idx(bi, j)]);
      det = ctx_.neg(det);
    }
    if (bj != t) {
      for (int i = 0; i < n; ++i) std::swap(d.a_[d.idx(i, t)], d.a_[d.idx(i, bj)]);
      det = ctx_.neg(det);
    }
    i64 piv = d.at(t, t);
    i64 uinv = ctx_.unit_inverse(piv);
    for (int r = t + 1; r < n; ++r) {
      i64 f = ctx_.mul(ctx_.divide_power(d.at(r, t), best), uinv);
      if (f == 0) continue;
      for (int j = t; j < n; ++j) d.a_[d.idx(r, j)] = ctx_.sub(d.at(r, j), ctx_.mul(f, d.at(t, j)));
    }
    det = ctx_.mul(det, piv);
  }
  return det;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
  const int n = rows_;
  Matrix a = *this;
  Matrix inv = identity(ctx_, n);
  for (int t = 0; t < n; ++t) {
    int p = -1;
    for (int i = t; i < n; ++i)
      if (ctx_.valuation(a.at(i, t)) == 0) {
        p = i;
        break;
      }
    if (p < 0) throw std::domain_error("inverse: determinant is not a unit");
    if (p != t) {
      for (int j = 0; j < n; ++j) {
        std::swap(a.a_[a.idx(t, j)], a.a_[a.idx(p, j)]);
        std::swap(inv.a_[inv.idx(t, j)], inv.a_[inv.idx(p, j)]);
      }
    }
    i64 s = ctx_.unit_inverse(a.at(t, t));
    for (int j = 0; j < n; ++j) {
      a.a_[a.idx(t, j)] = ctx_.mul(a.at(t, j), s);
      inv.a_[inv.idx(t, j)] = ctx_.mul(inv.at(t, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == t) continue;
      i64 f = a.at(r, t);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.a_[a.idx(r, j)] = ctx_.sub(a.at(r, j), ctx_.mul(f, a.at(t, j)));
        inv.a_[inv.idx(r, j)] = ctx_.sub(inv.at(r, j), ctx_.mul(f, inv.at(t, j)));
      }
    }
  }
  return inv;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](i64 x) { return x == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
  return ctx_ == o.ctx_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

// ---------------------------------------------------------------------------

namespace {

bool is_zero_vec(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

void axpy(const Context& ctx, Vector& y, i64 f, const Vector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = ctx.sub(y[i], ctx.mul(f, x[i]));
}

}  // namespace

ColumnReduction column_reduce(const Matrix& m) {
  const Context& ctx = m.context();
  const int r = m.rows();
  std::vector<Vector> remaining;
  for (int j = 0; j < m.cols(); ++j) {
    Vector c = m.column(j);
    if (!is_zero_vec(c)) remaining.push_back(std::move(c));
  }
  std::vector<Vector> chosen;
  std::vector<int> pivot_rows, pivot_vals;
  while (!remaining.empty()) {
    int best = ctx.precision(), brow = -1;
    std::size_t bcol = 0;
    for (int i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < remaining.size(); ++j) {
        int v = ctx.valuation(remaining[j][static_cast<std::size_t>(i)]);
        if (v < best) {
          best = v;
          brow = i;
          bcol = j;
        }
      }
    }
    if (brow < 0) break;
    Vector piv = std::move(remaining[bcol]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(bcol));
    i64 s = ctx.unit_inverse(piv[static_cast<std::size_t>(brow)]);
    for (auto& x : piv) x = ctx.mul(x, s);
    for (auto& w : remaining) {
      i64 f = ctx.divide_power(w[static_cast<std::size_t>(brow)], best);
      if (f != 0) axpy(ctx, w, f, piv);
    }
    remaining.erase(std::remove_if(remaining.begin(), remaining.end(), is_zero_vec), remaining.end());
    chosen.push_back(std::move(piv));
    pivot_rows.push_back(brow);
    pivot_vals.push_back(best);
  }
  // Back-substitution makes each column's entries at later pivot rows canonical residues.
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    for (std::size_t k = j + 1; k < chosen.size(); ++k) {
      i64 pk = ctx.power(pivot_vals[k]);
      i64 x = chosen[j][static_cast<std::size_t>(pivot_rows[k])];
      i64 q = x / pk;
      if (q != 0) axpy(ctx, chosen[j], q, chosen[k]);
    }
  }
  ColumnReduction out{Matrix::from_columns(ctx, r, chosen), pivot_rows, pivot_vals};
  const int slots = std::min(m.rows(), m.cols());
  out.elementary_divisors = pivot_vals;
  out.elementary_divisors.resize(static_cast<std::size_t>(std::max(slots, 0)), ctx.precision());
  return out;
}

SmithForm smith_form(const Matrix& m) {
  const Context& ctx = m.context();
  const int rows = m.rows(), cols = m.cols();
  std::vector<Vector> d = m.to_rows();
  Matrix u = Matrix::identity(ctx, rows);
  Matrix v = Matrix::identity(ctx, cols);
  std::vector<Vector> ur = u.to_rows();
  std::vector<Vector> vc;
  for (int j = 0; j < cols; ++j) vc.push_back(v.column(j));
  const int slots = std::min(rows, cols);
  std::vector<int> divisors(static_cast<std::size_t>(slots), ctx.precision());
  auto D = [&](int i, int j) -> i64& { return d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  for (int t = 0; t < slots; ++t) {
    int best = ctx.precision(), bi = -1, bj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        int val = ctx.valuation(D(i, j));
        if (val < best) {
          best = val;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    std::swap(d[static_cast<std::size_t>(t)], d[static_cast<std::size_t>(bi)]);
    std::swap(ur[static_cast<std::size_t>(t)], ur[static_cast<std::size_t>(bi)]);
    if (bj != t) {
      for (int i = 0; i < rows; ++i) std::swap(D(i, t), D(i, bj));
      std::swap(vc[static_cast<std::size_t>(t)], vc[static_cast<std::size_t>(bj)]);
    }
    i64 s = ctx.unit_inverse(D(t, t));
    for (auto& x : d[static_cast<std::size_t>(t)]) x = ctx.mul(x, s);
    for (auto& x : ur[static_cast<std::size_t>(t)]) x = ctx.mul(x, s);
    for (int r = t + 1; r < rows; ++r) {
      i64 f = ctx.divide_power(D(r, t), best);
      if (f == 0) continue;
      axpy(ctx, d[static_cast<std::size_t>(r)], f, d[static_cast<std::size_t>(t)]);
      axpy(ctx, ur[static_cast<std::size_t>(r)], f, ur[static_cast<std::size_t>(t)]);
    }
    for (int c = t + 1; c < cols; ++c) {
      i64 f = ctx.divide_power(D(t, c), best);
      if (f == 0) continue;
      D(t, c) = 0;
      axpy(ctx, vc[static_cast<std::size_t>(c)], f, vc[static_cast<std::size_t>(t)]);
    }
    divisors[static_cast<std::size_t>(t)] = best;
  }
  SmithForm out{divisors, Matrix::from_rows(ctx, ur), Matrix::from_columns(ctx, cols, vc)};
  if (rows == 0) out.u = Matrix(ctx, 0, 0);
  return out;
}

Matrix kernel(const Matrix& m) {
  const Context& ctx = m.context();
  SmithForm sf = smith_form(m);
  std::vector<Vector> gens;
  for (int i = 0; i < m.cols(); ++i) {
    int d = i < static_cast<int>(sf.divisors.size()) ? sf.divisors[static_cast<std::size_t>(i)] : ctx.precision();
    if (d == 0) continue;
    i64 scale = ctx.power(ctx.precision() - d);
    Vector g = sf.v.column(i);
    for (auto& x : g) x = ctx.mul(x, scale);
    gens.push_back(std::move(g));
  }
  return Matrix::from_columns(ctx, m.cols(), gens);
}

// ---------------------------------------------------------------------------

Lattice::Lattice(ColumnReduction r) : basis_(std::move(r.reduced)), pivot_rows_(std::move(r.pivot_rows)) {
  for (int j = 0; j < basis_.cols(); ++j) pivot_vals_.push_back(basis_.context().valuation(basis_.at(pivot_rows_[static_cast<std::size_t>(j)], j)));
}

Lattice Lattice::span(const Matrix& generators) { return Lattice(column_reduce(generators)); }

Lattice Lattice::with_rank(const Matrix& generators, int declared_rank) {
  ColumnReduction r = column_reduce(generators);
  if (r.reduced.cols() < declared_rank) {
    throw PrecisionLossError("lattice generators collapse at precision " + std::to_string(generators.context().precision()) +
                             ": " + std::to_string(r.reduced.cols()) + " nonzero pivots for declared rank " +
                             std::to_string(declared_rank));
  }
  return Lattice(std::move(r));
}

Lattice Lattice::zero(const Context& ctx, int ambient_rank) { return span(Matrix(ctx, ambient_rank, 0)); }

Lattice Lattice::full(const Context& ctx, int ambient_rank) { return span(Matrix::identity(ctx, ambient_rank)); }

bool Lattice::contains(const Vector& v) const {
  const Context& ctx = context();
  if (static_cast<int>(v.size()) != ambient_rank()) throw std::invalid_argument("contains: wrong vector length");
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ctx.reduce(v[i]);
  for (int j = 0; j < basis_.cols(); ++j) {
    auto row = static_cast<std::size_t>(pivot_rows_[static_cast<std::size_t>(j)]);
    int k = pivot_vals_[static_cast<std::size_t>(j)];
    if (ctx.valuation(w[row]) < k) return false;
    i64 c = ctx.divide_power(w[row], k);
    if (c != 0) axpy(ctx, w, c, basis_.column(j));
  }
  return is_zero_vec(w);
}

bool Lattice::contains(const Lattice& other) const {
  if (other.context() != context() || other.ambient_rank() != ambient_rank()) throw std::invalid_argument("contains: ambient mismatch");
  for (int j = 0; j < other.basis_.cols(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

int Lattice::log_order() const {
  int total = 0;
  for (int k : pivot_vals_) total += context().precision() - k;
  return total;
}

Lattice Lattice::reduced_to(int precision) const { return span(basis_.reduced_to(precision)); }

bool Lattice::operator<(const Lattice& o) const {
  if (basis_.cols() != o.basis_.cols()) return basis_.cols() < o.basis_.cols();
  return basis_.to_rows() < o.basis_.to_rows();
}

bool is_pure(const Lattice& x) {
  const auto& v = x.pivot_valuations();
  return std::all_of(v.begin(), v.end(), [](int k) { return k == 0; });
}

namespace {

void require_same_ambient(const Lattice& x, const Lattice& y) {
  if (x.context() != y.context() || x.ambient_rank() != y.ambient_rank()) {
    throw std::invalid_argument("lattices live in different ambient modules");
  }
}

}  // namespace

Lattice intersect(const Lattice& x, const Lattice& y) {
  require_same_ambient(x, y);
  const Context& ctx = x.context();
  if (x.is_zero() || y.is_zero()) return Lattice::zero(ctx, x.ambient_rank());
  Matrix a = x.basis().hconcat(y.basis().scaled(-1));
  Matrix k = kernel(a);
  Matrix top(ctx, x.declared_rank(), k.cols());
  for (int i = 0; i < x.declared_rank(); ++i)
    for (int j = 0; j < k.cols(); ++j) top.set(i, j, k.at(i, j));
  return Lattice::span(x.basis() * top);
}

Lattice project_mod_ell(const Lattice& x) { return Lattice::span(x.basis().reduced_to(1)); }

SumResult sum(const Lattice& x, const Lattice& y) {
  require_same_ambient(x, y);
  Lattice s = Lattice::span(x.basis().hconcat(y.basis()));
  bool direct = intersect(x, y).is_zero();
  bool independent = intersect(project_mod_ell(x), project_mod_ell(y)).is_zero();
  bool pure = is_pure(s);
  return SumResult{std::move(s), direct, pure, independent};
}

Lattice image(const Matrix& a, const Lattice& x) {
  if (a.cols() != x.ambient_rank()) throw std::invalid_argument("image: shape mismatch");
  return Lattice::span(a * x.basis());
}

bool Pairing::is_perfect() const {
  if (gram.rows() != gram.cols()) return false;
  return gram.context().valuation(gram.determinant()) == 0;
}

Pairing standard_pairing(const Context& ctx, int r) { return Pairing{Matrix::identity(ctx, r)}; }

Lattice orthogonal(const Lattice& x, const Pairing& e) {
  if (!e.is_perfect()) throw std::invalid_argument("orthogonal: pairing is not perfect");
  if (x.ambient_rank() != e.gram.rows() || x.context() != e.gram.context()) throw std::invalid_argument("orthogonal: shape mismatch");
  return Lattice::span(kernel(x.basis().transpose() * e.gram));
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace sslab::padic
