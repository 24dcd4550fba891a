#include "sslab/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sslab/arith.hpp"

namespace sslab::poly {

ZPoly trim(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int degree(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

const mpz_class& leading(const ZPoly& f) {
  int d = degree(f);
  if (d < 0) throw std::domain_error("leading coefficient of the zero polynomial");
  return f[d];
}

ZPoly add(const ZPoly& f, const ZPoly& g) {
  ZPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  return trim(std::move(r));
}

ZPoly sub(const ZPoly& f, const ZPoly& g) {
  ZPoly r(std::max(f.size(), g.size()));
  for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  return trim(std::move(r));
}

ZPoly mul(const ZPoly& f, const ZPoly& g) {
  if (f.empty() || g.empty()) return {};
  ZPoly r(f.size() + g.size() - 1);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  return trim(std::move(r));
}

ZPoly scale(const ZPoly& f, const mpz_class& c) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] * c;
  return trim(std::move(r));
}

ZPoly derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<unsigned long>(i);
  return trim(std::move(r));
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) g = ::gcd(g, c);
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  ZPoly r = trim(f);
  if (r.empty()) return r;
  mpz_class c = content(r);
  if (leading(r) < 0) c = -c;
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

mpz_class evaluate(const ZPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class evaluate(const ZPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * x + mpq_class(*it);
    acc.canonicalize();
  }
  return acc;
}

ZPoly pseudo_remainder(const ZPoly& f, const ZPoly& g) {
  const int dg = degree(g);
  if (dg < 0) throw std::domain_error("pseudo_remainder: division by zero polynomial");
  ZPoly r = trim(f);
  int dr = degree(r);
  if (dr < dg) return r;
  const mpz_class lc = leading(g);
  int e = dr - dg + 1;
  while (dr >= dg) {
    mpz_class c = r[dr];
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= dg; ++j) r[dr - dg + j] -= c * g[j];
    --e;
    r = trim(std::move(r));
    dr = degree(r);
  }
  mpz_class factor;
  mpz_pow_ui(factor.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
  return scale(r, factor);
}

ZPoly exact_divide(const ZPoly& f, const ZPoly& g) {
  const int dg = degree(g);
  if (dg < 0) throw std::domain_error("exact_divide: division by zero polynomial");
  ZPoly r = trim(f);
  int dr = degree(r);
  if (dr < dg) {
    if (dr < 0) return {};
    throw std::domain_error("exact_divide: not divisible");
  }
  ZPoly q(dr - dg + 1);
  const mpz_class& lc = leading(g);
  while (dr >= dg) {
    if (!mpz_divisible_p(r[dr].get_mpz_t(), lc.get_mpz_t())) throw std::domain_error("exact_divide: not divisible");
    mpz_class c = r[dr] / lc;
    q[dr - dg] = c;
    for (int j = 0; j <= dg; ++j) r[dr - dg + j] -= c * g[j];
    r = trim(std::move(r));
    dr = degree(r);
  }
  if (!r.empty()) throw std::domain_error("exact_divide: not divisible");
  return trim(std::move(q));
}

namespace {

mpz_class pow_z(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

ZPoly divexact_scalar(ZPoly f, const mpz_class& c) {
  for (auto& x : f) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw std::logic_error("subresultant: inexact division");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return f;
}

}  // namespace

mpz_class resultant(const ZPoly& f0, const ZPoly& g0) {
  ZPoly a = trim(f0), b = trim(g0);
  if (a.empty() || b.empty()) return 0;
  int da = degree(a), db = degree(b);
  if (da == 0) return pow_z(a[0], db);
  if (db == 0) return pow_z(b[0], da);

  mpz_class ca = content(a), cb = content(b);
  a = divexact_scalar(a, ca);
  b = divexact_scalar(b, cb);
  mpz_class t = pow_z(ca, db) * pow_z(cb, da);
  int s = 1;
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
    if (da % 2 == 1 && db % 2 == 1) s = -1;
  }
  mpz_class g = 1, h = 1;
  while (true) {
    const int delta = da - db;
    if (da % 2 == 1 && db % 2 == 1) s = -s;
    ZPoly r = pseudo_remainder(a, b);
    a = b;
    da = db;
    if (r.empty()) return 0;
    b = divexact_scalar(r, g * pow_z(h, delta));
    db = degree(b);
    g = leading(a);
    // h <- g^delta / h^(delta - 1)
    if (delta > 0) h = pow_z(g, delta) / pow_z(h, delta - 1);
    if (db <= 0) break;
  }
  // b is a nonzero constant.
  mpz_class lb = b[0];
  mpz_class num = pow_z(lb, da);
  mpz_class res;
  if (da == 0) {
    res = 1;
  } else {
    mpz_class den = pow_z(h, da - 1);
    res = num / den;
  }
  return s * t * res;
}

mpz_class discriminant(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1) throw std::domain_error("discriminant: degree must be at least 1");
  mpz_class r = resultant(f, derivative(f));
  mpz_class q = r / leading(f);
  if ((n * (n - 1) / 2) % 2 == 1) q = -q;
  return q;
}

ZPoly gcd(const ZPoly& f, const ZPoly& g) {
  ZPoly a = primitive_part(f), b = primitive_part(g);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_part(a);
}

ZPoly squarefree_part(const ZPoly& f) {
  ZPoly p = primitive_part(f);
  if (degree(p) <= 0) return p;
  ZPoly g = gcd(p, derivative(p));
  if (degree(g) <= 0) return p;
  return primitive_part(exact_divide(scale(p, pow_z(leading(g), degree(p) - degree(g) + 1)), g));
}

namespace {

i64 eval_mod(const ZPoly& f, i64 x, i64 p) {
  i64 acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    mpz_class c = *it % p;
    acc = mod(acc * x + c.get_si(), p);
  }
  return acc;
}

// Integer roots of a monic squarefree polynomial.
std::vector<mpz_class> integer_roots_monic(const ZPoly& g) {
  const int n = degree(g);
  std::vector<mpz_class> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(-g[0]);
    return out;
  }
  mpz_class bound = 0;
  for (int i = 0; i < n; ++i) {
    mpz_class a = abs(g[i]);
    if (a > bound) bound = a;
  }
  bound += 1;
  const ZPoly dg = derivative(g);
  for (i64 p = 3;; p += 2) {
    if (!is_prime(static_cast<u64>(p))) continue;
    if (p > 100000) throw std::logic_error("rational_roots: no suitable prime found");
    std::vector<i64> roots;
    bool simple = true;
    for (i64 x = 0; x < p && simple; ++x) {
      if (eval_mod(g, x, p) != 0) continue;
      if (eval_mod(dg, x, p) == 0) simple = false;
      roots.push_back(x);
    }
    if (!simple) continue;
    mpz_class modulus = p;
    mpz_class target = 2 * bound + 1;
    for (i64 r0 : roots) {
      mpz_class r = r0;
      mpz_class m = p;
      while (m <= target) {
        m = m * m;
        mpz_class fv = evaluate(g, r);
        mpz_class dv = evaluate(dg, r);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t()) == 0)
          throw std::logic_error("rational_roots: Hensel lift lost invertibility");
        r = (r - fv * inv) % m;
        if (r < 0) r += m;
      }
      mpz_class y = r;
      if (2 * y > m) y -= m;
      if (abs(y) <= bound && evaluate(g, y) == 0) out.push_back(y);
    }
    return out;
  }
}

}  // namespace

std::vector<mpq_class> rational_roots(const ZPoly& f0) {
  ZPoly f = trim(f0);
  if (f.empty()) throw std::domain_error("rational_roots: zero polynomial");
  std::vector<mpq_class> out;
  size_t shift = 0;
  while (shift < f.size() && f[shift] == 0) ++shift;
  if (shift > 0) {
    out.emplace_back(0);
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(shift));
  }
  f = squarefree_part(f);
  const int n = degree(f);
  if (n >= 1) {
    const mpz_class an = leading(f);
    ZPoly g(n + 1);
    mpz_class power = 1;
    for (int i = n - 1; i >= 0; --i) {
      g[i] = f[i] * power;
      power *= an;
    }
    g[n] = 1;
    for (const auto& y : integer_roots_monic(g)) {
      mpq_class x(y, an);
      x.canonicalize();
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const ZPoly& f) {
  ZPoly g = trim(f);
  if (g.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
    if (g[i] == 0) continue;
    mpz_class c = g[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    c = abs(c);
    if (i == 0 || c != 1) os << c.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace sslab::poly
