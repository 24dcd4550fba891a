#pragma once

// Brute-force reference computations for the property suites. Nothing here calls into the
// library code under test except to build inputs and read results.

#include <gmpxx.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sslab/padic.hpp"
#include "sslab/ramification.hpp"

namespace oracle {

using sslab::i64;
using sslab::padic::Context;
using sslab::padic::Lattice;
using sslab::padic::Matrix;
using sslab::padic::Vector;

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (messages.size() < 20) messages.push_back(what);
  }
};

// Rank of integer rows modulo a prime, by plain Gaussian elimination.
inline int rank_mod_prime(std::vector<std::vector<i64>> rows, i64 p) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (((rows[r][c] % p) + p) % p != 0) piv = r;
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    i64 inv = 1;
    const i64 a = ((rows[rank][c] % p) + p) % p;
    while ((a * inv) % p != 1) ++inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      const i64 f = ((rows[r][c] % p) + p) % p * inv % p;
      for (int k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Column vectors of an r x k integer matrix.
using Columns = std::vector<std::vector<i64>>;

inline Matrix to_matrix(const Context& ctx, int r, const Columns& cols) {
  return Matrix::from_columns(ctx, r, cols);
}

// Random k columns in [0, ell^N)^r whose reductions mod ell are independent.
inline Columns random_pure_columns(std::mt19937_64& rng, i64 ell, int n, int r, int k) {
  i64 m = 1;
  for (int i = 0; i < n; ++i) m *= ell;
  std::uniform_int_distribution<i64> dist(0, m - 1);
  for (;;) {
    Columns cols(static_cast<size_t>(k), std::vector<i64>(static_cast<size_t>(r)));
    for (auto& c : cols)
      for (auto& x : c) x = dist(rng);
    if (rank_mod_prime(cols, ell) == k) return cols;
  }
}

// Finite abelian group (Z/ell^N)^r with elements encoded in base ell^N.
class Ambient {
 public:
  Ambient(i64 ell, int n, int r) : ell_(ell), n_(n), r_(r) {
    m_ = 1;
    for (int i = 0; i < n; ++i) m_ *= ell;
    size_ = 1;
    for (int i = 0; i < r; ++i) size_ *= m_;
  }
  i64 size() const { return size_; }
  i64 modulus() const { return m_; }
  int rank() const { return r_; }

  i64 encode(const std::vector<i64>& v) const {
    i64 code = 0;
    for (int i = r_ - 1; i >= 0; --i) code = code * m_ + (((v[static_cast<size_t>(i)] % m_) + m_) % m_);
    return code;
  }
  std::vector<i64> decode(i64 code) const {
    std::vector<i64> v(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) {
      v[static_cast<size_t>(i)] = code % m_;
      code /= m_;
    }
    return v;
  }
  i64 add(i64 a, i64 b) const {
    auto x = decode(a), y = decode(b);
    for (int i = 0; i < r_; ++i) x[static_cast<size_t>(i)] += y[static_cast<size_t>(i)];
    return encode(x);
  }

  // Membership bitmap of the subgroup generated by the columns.
  std::vector<char> subgroup(const Columns& gens) const {
    std::vector<char> seen(static_cast<size_t>(size_), 0);
    std::vector<i64> list{0};
    seen[0] = 1;
    for (const auto& g : gens) {
      const i64 gc = encode(g);
      for (size_t idx = 0; idx < list.size(); ++idx) {
        const i64 v = add(list[idx], gc);
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = 1;
          list.push_back(v);
        }
      }
    }
    return seen;
  }

  // log_ell of the number of set bits.
  int log_count(const std::vector<char>& s) const {
    i64 c = 0;
    for (char b : s) c += b;
    int k = 0;
    while (c > 1) {
      c /= ell_;
      ++k;
    }
    return k;
  }

  // A subgroup S is a direct summand iff |S| = ell^(N * dim(S mod ell)).
  bool is_pure(const std::vector<char>& s) const {
    std::vector<char> images(static_cast<size_t>(std::max<i64>(1, ipow_small(ell_, r_))), 0);
    for (i64 code = 0; code < size_; ++code) {
      if (!s[static_cast<size_t>(code)]) continue;
      const auto v = decode(code);
      i64 img = 0;
      for (int i = r_ - 1; i >= 0; --i) img = img * ell_ + v[static_cast<size_t>(i)] % ell_;
      images[static_cast<size_t>(img)] = 1;
    }
    i64 cnt = 0;
    for (char b : images) cnt += b;
    int dim = 0;
    while (cnt > 1) {
      cnt /= ell_;
      ++dim;
    }
    return log_count(s) == n_ * dim;
  }

  // {y : x . y = 0 for every generator x}.
  std::vector<char> orthogonal(const Columns& gens) const {
    std::vector<char> out(static_cast<size_t>(size_), 0);
    for (i64 code = 0; code < size_; ++code) {
      const auto y = decode(code);
      bool ok = true;
      for (const auto& x : gens) {
        i64 dot = 0;
        for (int i = 0; i < r_; ++i) dot = (dot + x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)]) % m_;
        if (dot != 0) {
          ok = false;
          break;
        }
      }
      out[static_cast<size_t>(code)] = ok;
    }
    return out;
  }

  // The lattice as a bitmap, by scanning every ambient element.
  std::vector<char> members(const Lattice& l) const {
    std::vector<char> out(static_cast<size_t>(size_), 0);
    for (i64 code = 0; code < size_; ++code) out[static_cast<size_t>(code)] = l.contains(decode(code));
    return out;
  }

 private:
  static i64 ipow_small(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }
  i64 ell_;
  int n_, r_;
  i64 m_, size_;
};

inline Columns lattice_columns(const Lattice& l) {
  Columns cols;
  for (int j = 0; j < l.basis().cols(); ++j) cols.push_back(l.basis().column(j));
  return cols;
}

// The intersection of the Z_ell-lattices spanned by two integer matrices with independent
// reductions mod ell, as ell-saturated integer columns: a Q-basis of the intersection of the
// rational spans, cleared of denominators and then saturated at ell.
inline std::vector<std::vector<mpz_class>> exact_intersection(const Columns& x, const Columns& y, i64 ell) {
  const size_t r = x.empty() ? (y.empty() ? 0 : y[0].size()) : x[0].size();
  const size_t kx = x.size(), ky = y.size(), n = kx + ky;
  if (kx == 0 || ky == 0) return {};
  // Kernel of [X | -Y] over Q by reduced row echelon form.
  std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(n));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < kx; ++j) a[i][j] = x[j][i];
    for (size_t j = 0; j < ky; ++j) a[i][kx + j] = -y[j][i];
  }
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < n && row < r; ++c) {
    size_t piv = r;
    for (size_t i = row; i < r; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    std::swap(a[row], a[piv]);
    const mpq_class lead = a[row][c];
    for (auto& v : a[row]) v /= lead;
    for (size_t i = 0; i < r; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[row][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<mpz_class>> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> coeff(n, 0);
    coeff[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) coeff[static_cast<size_t>(pivot_col[i])] = -a[i][f];
    std::vector<mpq_class> v(r, 0);
    for (size_t j = 0; j < kx; ++j)
      for (size_t i = 0; i < r; ++i) v[i] += coeff[j] * x[j][i];
    mpz_class den = 1;
    for (auto& q : v) den = lcm(den, q.get_den());
    std::vector<mpz_class> iv(r);
    for (size_t i = 0; i < r; ++i) iv[i] = mpz_class(v[i] * den);
    basis.push_back(iv);
  }
  // Saturate at ell: while the reductions are dependent, divide a combination by ell.
  const mpz_class L = ell;
  for (;;) {
    const size_t k = basis.size();
    bool changed = false;
    // Search the kernel of the reduction mod ell by brute force over coefficient vectors.
    std::vector<i64> c(k, 0);
    for (;;) {
      size_t pos = 0;
      while (pos < k && c[pos] == ell - 1) c[pos++] = 0;
      if (pos == k) break;
      ++c[pos];
      bool zero = true;
      for (size_t i = 0; i < r && zero; ++i) {
        mpz_class s = 0;
        for (size_t j = 0; j < k; ++j) s += c[j] * basis[j][i];
        if (s % L != 0) zero = false;
      }
      if (!zero) continue;
      size_t unit = k;
      for (size_t j = 0; j < k; ++j)
        if (c[j] != 0) unit = j;
      std::vector<mpz_class> v(r, 0);
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < k; ++j) v[i] += c[j] * basis[j][i];
        v[i] /= L;
      }
      basis[unit] = v;
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return basis;
}

inline Lattice lattice_from_mpz(const Context& ctx, int r, const std::vector<std::vector<mpz_class>>& cols) {
  if (cols.empty()) return Lattice::zero(ctx, r);
  Columns c;
  const mpz_class m = ctx.modulus();
  for (const auto& col : cols) {
    std::vector<i64> v;
    for (const auto& z : col) {
      mpz_class t = z % m;
      if (t < 0) t += m;
      v.push_back(t.get_si());
    }
    c.push_back(v);
  }
  return Lattice::span(to_matrix(ctx, r, c));
}

// Random valid tower E >= F >= Q_ell(mu_ell) >= Q_ell with cyclic Gal(E/Q_ell(mu_ell)), or no
// value when the random choice is not compatible with Herbrand's theorem.
inline std::optional<sslab::ram::TowerData> random_tower(std::mt19937_64& rng, i64 ell) {
  using sslab::Rational;
  using sslab::ram::herbrand_phi;
  using sslab::ram::RamFiltration;
  std::uniform_int_distribution<int> exp_dist(1, ell == 2 ? 4 : 2);
  std::uniform_int_distribution<int> len_dist(1, 5);
  const int a = exp_dist(rng);
  // Wild lower filtration h(1) >= h(2) >= ... of the cyclic group H of order ell^a.
  std::vector<i64> h{1};
  for (int i = 0; i < a; ++i) h[0] *= ell;
  int cur = a;
  while (cur > 0) {
    const int steps = len_dist(rng);
    for (int s = 0; s < steps; ++s) h.push_back(h.back());
    std::uniform_int_distribution<int> drop(1, cur);
    cur -= drop(rng);
    i64 v = 1;
    for (int i = 0; i < cur; ++i) v *= ell;
    h.back() = v;
  }
  while (h.back() != 1) h.push_back(1);
  std::vector<i64> total{(ell - 1) * h[0]};
  for (i64 v : h) total.push_back(v);
  std::uniform_int_distribution<int> b_dist(0, a);
  const int b = b_dist(rng);
  i64 nord = 1;
  for (int i = 0; i < b; ++i) nord *= ell;
  auto hfun = [&](i64 i) { return i == 0 ? h[0] : (i < static_cast<i64>(total.size()) ? total[static_cast<size_t>(i)] : 1); };
  std::vector<i64> sub;
  for (size_t i = 0; i < total.size(); ++i) sub.push_back(std::min(nord, hfun(static_cast<i64>(i))));
  const RamFiltration subf(sub);
  // Quotient lower filtration: order at index j is |H_x N / N| where phi_{E/F}(x) = j.
  std::vector<i64> quot;
  const i64 denom = 2 * nord;
  const i64 xmax = static_cast<i64>(total.size()) + 2;
  for (i64 j = 0;; ++j) {
    bool found = false;
    for (i64 k = 0; k <= denom * xmax * nord; ++k) {
      const Rational x(k, denom);
      if (herbrand_phi(subf, x) == Rational(j)) {
        const i64 idx = x.ceil();
        quot.push_back(hfun(idx) / subf.order(idx));
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
    if (quot.back() == 1) break;
  }
  sslab::ram::TowerData t{RamFiltration(total), subf, RamFiltration(quot), true};
  try {
    sslab::ram::validate_tower(t, ell);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return t;
}

inline std::string describe(i64 ell, int n, int r) {
  std::ostringstream os;
  os << "ell=" << ell << " N=" << n << " r=" << r;
  return os.str();
}

}  // namespace oracle
