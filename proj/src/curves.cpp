#include "sslab/curves.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sslab/parallel.hpp"

namespace sslab::curves {

using poly::ZPoly;

WeierstrassCurve WeierstrassCurve::parse(const std::string& text) {
  std::vector<mpz_class> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    mpz_class z;
    if (item.empty() || z.set_str(item, 10) != 0) throw std::invalid_argument("curve coefficient is not an integer: '" + item + "'");
    v.push_back(z);
  }
  if (v.size() != 5) throw std::invalid_argument("curve needs five coefficients a1,a2,a3,a4,a6");
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::string WeierstrassCurve::str() const {
  return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," + a6.get_str() + "]";
}

bool WeierstrassCurve::operator==(const WeierstrassCurve& o) const {
  return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
}

CurveInvariants invariants(const WeierstrassCurve& e) {
  CurveInvariants r;
  r.b2 = e.a1 * e.a1 + 4 * e.a2;
  r.b4 = 2 * e.a4 + e.a1 * e.a3;
  r.b6 = e.a3 * e.a3 + 4 * e.a6;
  r.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
  r.c4 = r.b2 * r.b2 - 24 * r.b4;
  r.c6 = -r.b2 * r.b2 * r.b2 + 36 * r.b2 * r.b4 - 216 * r.b6;
  r.disc = -r.b2 * r.b2 * r.b8 - 8 * r.b4 * r.b4 * r.b4 - 27 * r.b6 * r.b6 + 9 * r.b2 * r.b4 * r.b6;
  if (r.disc == 0) throw SingularCurveError("singular curve " + e.str() + ": discriminant is zero");
  r.j = mpq_class(r.c4 * r.c4 * r.c4, r.disc);
  r.j.canonicalize();
  return r;
}

int ord(const mpz_class& n, i64 p) {
  if (n == 0) throw std::domain_error("ord of zero");
  mpz_class m = abs(n);
  mpz_class pz = static_cast<long>(p);
  return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
}

int ord(const mpq_class& q, i64 p) { return ord(q.get_num(), p) - ord(q.get_den(), p); }

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::good: return "good";
    case Reduction::multiplicative: return "multiplicative";
    case Reduction::additive: return "additive";
  }
  return "?";
}

namespace {

bool divides(i64 p, const mpz_class& n) { return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

i64 residue(const mpz_class& z, i64 p) { return static_cast<i64>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p))); }

void require_prime(i64 p, const char* what) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument(std::string(what) + ": p must be prime");
}

}  // namespace

LocalData local_data(const WeierstrassCurve& e, i64 p) {
  require_prime(p, "local_data");
  const CurveInvariants inv = invariants(e);
  LocalData d{p, Reduction::good, 1, ord(inv.disc, p)};
  if (d.disc_valuation == 0) return d;
  if (inv.c4 != 0 && !divides(p, inv.c4)) {
    d.kind = Reduction::multiplicative;
    d.component_order = d.disc_valuation;
  } else {
    d.kind = Reduction::additive;
  }
  return d;
}

namespace {

struct ReducedCurve {
  i64 p, a1, a2, a3, a4, a6;
};

ReducedCurve reduce_good(const WeierstrassCurve& e, i64 p) {
  const CurveInvariants inv = invariants(e);
  if (divides(p, inv.disc)) throw std::invalid_argument("count_points: bad reduction at " + std::to_string(p));
  return {p, residue(e.a1, p), residue(e.a2, p), residue(e.a3, p), residue(e.a4, p), residue(e.a6, p)};
}

i64 count_mod2(const ReducedCurve& c) {
  i64 n = 1;
  for (i64 x = 0; x < 2; ++x)
    for (i64 y = 0; y < 2; ++y) {
      i64 lhs = y * y + c.a1 * x * y + c.a3 * y;
      i64 rhs = x * x * x + c.a2 * x * x + c.a4 * x + c.a6;
      if (mod(lhs - rhs, 2) == 0) ++n;
    }
  return n;
}

std::vector<char> square_table(i64 p) {
  std::vector<char> sq(static_cast<size_t>(p), 0);
  for (i64 y = 0; y < p; ++y) sq[static_cast<size_t>(mulmod(y, y, p))] = 1;
  return sq;
}

// Number of y with (2y + a1 x + a3)^2 = D(x) for a single x.
inline i64 fibre_size(const ReducedCurve& c, const std::vector<char>& sq, i64 x) {
  const i64 p = c.p;
  i64 lin = mod(c.a1 * x + c.a3, p);
  i64 cub = mod(mulmod(mulmod(x, x, p) + mulmod(c.a2, x, p) + c.a4, x, p) + c.a6, p);
  i64 d = mod(mulmod(lin, lin, p) + 4 * cub, p);
  if (d == 0) return 1;
  return sq[static_cast<size_t>(d)] ? 2 : 0;
}

i64 count_prime_serial(const ReducedCurve& c) {
  if (c.p == 2) return count_mod2(c);
  const auto sq = square_table(c.p);
  i64 n = 1;
  for (i64 x = 0; x < c.p; ++x) n += fibre_size(c, sq, x);
  return n;
}

i64 count_prime_parallel(const ReducedCurve& c) {
  if (c.p == 2) return count_mod2(c);
  configure_threads();
  const auto sq = square_table(c.p);
  i64 n = 1;
#pragma omp parallel for reduction(+ : n) schedule(static)
  for (i64 x = 0; x < c.p; ++x) n += fibre_size(c, sq, x);
  return n;
}

std::pair<i64, int> prime_power(i64 q) {
  if (q < 2 || q > 1'000'000) throw std::invalid_argument("count_points: q must be a prime power in [2, 10^6]");
  auto f = factor(q);
  if (f.size() != 1) throw std::invalid_argument("count_points: q must be a prime power");
  return {f[0].first, f[0].second};
}

i64 lift_count(i64 p, int k, i64 np) {
  const i64 a = p + 1 - np;
  i64 s_prev = 2, s = a;
  for (int i = 2; i <= k; ++i) {
    i64 next = a * s - p * s_prev;
    s_prev = s;
    s = next;
  }
  return ipow(p, k) + 1 - s;
}

}  // namespace

i64 count_points(const WeierstrassCurve& e, i64 q) {
  auto [p, k] = prime_power(q);
  return lift_count(p, k, count_prime_parallel(reduce_good(e, p)));
}

i64 count_points_serial(const WeierstrassCurve& e, i64 q) {
  auto [p, k] = prime_power(q);
  return lift_count(p, k, count_prime_serial(reduce_good(e, p)));
}

i64 trace_of_frobenius(const WeierstrassCurve& e, i64 q) { return q + 1 - count_points(e, q); }

bool is_ordinary(const WeierstrassCurve& e, i64 ell) {
  require_prime(ell, "is_ordinary");
  return mod(trace_of_frobenius(e, ell), ell) != 0;
}

bool Point::operator==(const Point& o) const {
  if (infinity || o.infinity) return infinity == o.infinity;
  return x == o.x && y == o.y;
}

namespace {

mpq_class q(const mpz_class& z) { return mpq_class(z); }

mpq_class canon(mpq_class v) {
  v.canonicalize();
  return v;
}

}  // namespace

bool on_curve(const WeierstrassCurve& e, const Point& p) {
  if (p.infinity) return true;
  mpq_class lhs = p.y * p.y + q(e.a1) * p.x * p.y + q(e.a3) * p.y;
  mpq_class rhs = p.x * p.x * p.x + q(e.a2) * p.x * p.x + q(e.a4) * p.x + q(e.a6);
  return canon(lhs - rhs) == 0;
}

Point negate(const WeierstrassCurve& e, const Point& p) {
  if (p.infinity) return p;
  return Point{p.x, canon(-p.y - q(e.a1) * p.x - q(e.a3)), false};
}

Point add(const WeierstrassCurve& e, const Point& p1, const Point& p2) {
  if (p1.infinity) return p2;
  if (p2.infinity) return p1;
  mpq_class lambda, nu;
  if (p1.x == p2.x) {
    mpq_class denom = canon(2 * p1.y + q(e.a1) * p1.x + q(e.a3));
    if (p1.y != p2.y || denom == 0) return Point::at_infinity();
    lambda = canon((3 * p1.x * p1.x + 2 * q(e.a2) * p1.x + q(e.a4) - q(e.a1) * p1.y) / denom);
    nu = canon((-p1.x * p1.x * p1.x + q(e.a4) * p1.x + 2 * q(e.a6) - q(e.a3) * p1.y) / denom);
  } else {
    mpq_class dx = canon(p2.x - p1.x);
    lambda = canon((p2.y - p1.y) / dx);
    nu = canon((p1.y * p2.x - p2.y * p1.x) / dx);
  }
  mpq_class x3 = canon(lambda * lambda + q(e.a1) * lambda - q(e.a2) - p1.x - p2.x);
  mpq_class y3 = canon(-(lambda + q(e.a1)) * x3 - nu - q(e.a3));
  return Point{x3, y3, false};
}

Point multiply(const WeierstrassCurve& e, const Point& p, i64 n) {
  if (n < 0) return multiply(e, negate(e, p), -n);
  Point acc = Point::at_infinity();
  Point base = p;
  while (n > 0) {
    if (n & 1) acc = add(e, acc, base);
    base = add(e, base, base);
    n >>= 1;
  }
  return acc;
}

ZPoly two_division_cubic(const WeierstrassCurve& e) {
  const CurveInvariants inv = invariants(e);
  return poly::trim({inv.b6, 2 * inv.b4, inv.b2, 4});
}

ZPoly division_polynomial(const WeierstrassCurve& e, int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("division_polynomial: n must be in [1, 7]");
  const CurveInvariants inv = invariants(e);
  if (n <= 2) return {1};
  const ZPoly f3{inv.b8, 3 * inv.b6, 3 * inv.b4, inv.b2, 3};
  if (n == 3) return poly::trim(f3);
  const ZPoly f4{inv.b4 * inv.b8 - inv.b6 * inv.b6, inv.b2 * inv.b8 - inv.b4 * inv.b6, 10 * inv.b8, 10 * inv.b6,
                 5 * inv.b4, inv.b2, 2};
  if (n == 4) return poly::trim(f4);
  const ZPoly cubic = two_division_cubic(e);
  const ZPoly cubic2 = poly::mul(cubic, cubic);
  const ZPoly f3cubed = poly::mul(poly::mul(f3, f3), f3);
  const ZPoly f5 = poly::sub(poly::mul(cubic2, f4), f3cubed);
  if (n == 5) return f5;
  if (n == 6) return poly::mul(f3, poly::sub(f5, poly::mul(f4, f4)));
  return poly::sub(poly::mul(f5, f3cubed), poly::mul(cubic2, poly::mul(poly::mul(f4, f4), f4)));
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& v) {
  if (v < 0) return std::nullopt;
  const mpz_class& n = v.get_num();
  const mpz_class& d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return canon(mpq_class(rn, rd));
}

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

}  // namespace

std::vector<Point> rational_torsion_points(const WeierstrassCurve& e, i64 ell) {
  if (ell != 2 && ell != 3 && ell != 5 && ell != 7) throw std::invalid_argument("torsion: ell must be 2, 3, 5 or 7");
  std::vector<Point> out;
  const ZPoly cubic = two_division_cubic(e);
  if (ell == 2) {
    for (const auto& x : poly::rational_roots(cubic)) {
      out.push_back(Point{x, canon(-(q(e.a1) * x + q(e.a3)) / 2), false});
    }
  } else {
    for (const auto& x : poly::rational_roots(division_polynomial(e, static_cast<int>(ell)))) {
      auto root = rational_sqrt(poly::evaluate(cubic, x));
      if (!root) continue;
      mpq_class base = canon(-(q(e.a1) * x + q(e.a3)));
      for (int sign : {1, -1}) {
        Point pt{x, canon((base + sign * *root) / 2), false};
        if (sign == -1 && *root == 0) break;
        out.push_back(pt);
      }
    }
  }
  for (const auto& pt : out) {
    if (!on_curve(e, pt) || !multiply(e, pt, ell).infinity)
      throw std::logic_error("torsion: candidate point failed verification");
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

TorsionResult has_rational_ell_torsion(const WeierstrassCurve& e, i64 ell) {
  auto pts = rational_torsion_points(e, ell);
  TorsionResult r;
  if (!pts.empty()) {
    r.found = true;
    r.witness = pts.front();
  }
  return r;
}

WeierstrassCurve transform(const WeierstrassCurve& e, const mpz_class& u, const mpz_class& r, const mpz_class& s,
                           const mpz_class& t) {
  if (u == 0) throw std::invalid_argument("transform: u must be nonzero");
  auto div = [&](const mpz_class& num, int k) {
    mpz_class uk;
    mpz_pow_ui(uk.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(k));
    if (!mpz_divisible_p(num.get_mpz_t(), uk.get_mpz_t())) throw std::domain_error("transform: non-integral result");
    return mpz_class(num / uk);
  };
  WeierstrassCurve o;
  o.a1 = div(e.a1 + 2 * s, 1);
  o.a2 = div(e.a2 - s * e.a1 + 3 * r - s * s, 2);
  o.a3 = div(e.a3 + r * e.a1 + 2 * t, 3);
  o.a4 = div(e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t, 4);
  o.a6 = div(e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1, 6);
  return o;
}

namespace {

int ord_or(const mpz_class& n, i64 p, int inf) { return n == 0 ? inf : ord(n, p); }

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpz_class fmod(const mpz_class& a, long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

bool kraus(const mpz_class& c4, const mpz_class& c6) {
  if (c6 != 0 && ord(c6, 3) == 2) return false;
  if (fmod(c6, 4) == 3) return true;
  const int v2c4 = ord_or(c4, 2, 1000);
  const mpz_class r = fmod(c6, 32);
  return v2c4 >= 4 && (r == 0 || r == 8);
}

std::optional<WeierstrassCurve> from_c4_c6(const mpz_class& c4, const mpz_class& c6) {
  mpz_class b2 = fmod(-c6, 12);
  if (b2 > 6) b2 -= 12;
  mpz_class num4 = b2 * b2 - c4;
  if (!mpz_divisible_ui_p(num4.get_mpz_t(), 24)) return std::nullopt;
  mpz_class b4 = num4 / 24;
  mpz_class num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
  if (!mpz_divisible_ui_p(num6.get_mpz_t(), 216)) return std::nullopt;
  mpz_class b6 = num6 / 216;
  WeierstrassCurve e;
  e.a1 = fmod(b2, 2);
  e.a3 = fmod(b6, 2);
  mpz_class n2 = b2 - e.a1, n4 = b4 - e.a1 * e.a3, n6 = b6 - e.a3;
  if (!mpz_divisible_ui_p(n2.get_mpz_t(), 4) || !mpz_divisible_ui_p(n4.get_mpz_t(), 2) ||
      !mpz_divisible_ui_p(n6.get_mpz_t(), 4))
    return std::nullopt;
  e.a2 = n2 / 4;
  e.a4 = n4 / 2;
  e.a6 = n6 / 4;
  return e;
}

}  // namespace

WeierstrassCurve minimal_model(const WeierstrassCurve& e) {
  const CurveInvariants inv = invariants(e);
  mpz_class g = inv.c4 == 0 ? inv.c6 : (inv.c6 == 0 ? inv.c4 : mpz_class(gcd(inv.c4, inv.c6)));
  g = abs(g);

  mpz_class rest = 1;
  int max2 = 0, max3 = 0;
  mpz_class rem = g;
  for (i64 p = 2; p <= 1'000'000; p = (p == 2 ? 3 : p + 2)) {
    if (rem == 1 || mpz_class(p) * p > rem) break;
    if (!divides(p, rem)) continue;
    if (!is_prime(static_cast<u64>(p))) continue;
    mpz_class pz = static_cast<long>(p);
    mpz_remove(rem.get_mpz_t(), rem.get_mpz_t(), pz.get_mpz_t());
    const int k = std::min({ord_or(inv.c4, p, 1 << 20) / 4, ord_or(inv.c6, p, 1 << 20) / 6, ord(inv.disc, p) / 12});
    if (k <= 0) continue;
    if (p == 2) max2 = k;
    else if (p == 3) max3 = k;
    else rest *= zpow(pz, static_cast<unsigned long>(k));
  }

  for (int k2 = max2; k2 >= 0; --k2) {
    for (int k3 = max3; k3 >= 0; --k3) {
      mpz_class u = rest * zpow(2, static_cast<unsigned long>(k2)) * zpow(3, static_cast<unsigned long>(k3));
      mpz_class u4 = zpow(u, 4), u6 = zpow(u, 6);
      mpz_class c4 = inv.c4 / u4, c6 = inv.c6 / u6;
      if (!kraus(c4, c6)) continue;
      auto m = from_c4_c6(c4, c6);
      if (!m) continue;
      const CurveInvariants check = invariants(*m);
      if (check.c4 != c4 || check.c6 != c6) throw std::logic_error("minimal_model: reconstruction mismatch");
      return *m;
    }
  }
  throw std::logic_error("minimal_model: no integral model found for " + e.str());
}

WeierstrassCurve velu_quotient(const WeierstrassCurve& e, const Point& p, i64 ell) {
  if (p.infinity) throw std::invalid_argument("velu_quotient: kernel generator is the point at infinity");
  if (ell < 2 || !is_prime(static_cast<u64>(ell))) throw std::invalid_argument("velu_quotient: ell must be prime");
  if (!on_curve(e, p) || !multiply(e, p, ell).infinity)
    throw std::invalid_argument("velu_quotient: point does not have order " + std::to_string(ell));

  const mpq_class a1 = q(e.a1), a2 = q(e.a2), a3 = q(e.a3), a4 = q(e.a4), a6 = q(e.a6);
  mpq_class v = 0, w = 0;
  std::vector<Point> reps;
  if (ell == 2) reps.push_back(p);
  else {
    Point cur = p;
    for (i64 k = 1; k <= (ell - 1) / 2; ++k) {
      reps.push_back(cur);
      cur = add(e, cur, p);
    }
  }
  for (const auto& pt : reps) {
    mpq_class gx = canon(3 * pt.x * pt.x + 2 * a2 * pt.x + a4 - a1 * pt.y);
    mpq_class gy = canon(-2 * pt.y - a1 * pt.x - a3);
    mpq_class vq = ell == 2 ? gx : canon(2 * gx - a1 * gy);
    mpq_class uq = canon(gy * gy);
    v += vq;
    w += uq + pt.x * vq;
  }
  v.canonicalize();
  w.canonicalize();
  const mpq_class A4 = canon(a4 - 5 * v);
  const mpq_class A6 = canon(a6 - (a1 * a1 + 4 * a2) * v - 7 * w);
  mpz_class u;
  mpz_lcm(u.get_mpz_t(), A4.get_den().get_mpz_t(), A6.get_den().get_mpz_t());
  WeierstrassCurve out;
  out.a1 = e.a1 * u;
  out.a2 = e.a2 * zpow(u, 2);
  out.a3 = e.a3 * zpow(u, 3);
  mpq_class s4 = canon(A4 * mpq_class(zpow(u, 4))), s6 = canon(A6 * mpq_class(zpow(u, 6)));
  if (s4.get_den() != 1 || s6.get_den() != 1) throw std::logic_error("velu_quotient: scaling failed");
  out.a4 = s4.get_num();
  out.a6 = s6.get_num();
  return minimal_model(out);
}

Genus2Disc hyperelliptic_odd_disc(const ZPoly& p, const ZPoly& qp) {
  if (poly::degree(p) != 5) throw std::invalid_argument("genus2: P must have degree 5");
  if (poly::degree(qp) > 3) throw std::invalid_argument("genus2: Q must have degree at most 3");
  const ZPoly r = poly::add(poly::scale(p, 4), poly::mul(qp, qp));
  Genus2Disc out;
  out.disc = poly::discriminant(r);
  if (out.disc == 0) throw std::invalid_argument("genus2: 4P + Q^2 is not squarefree");
  mpz_class m = abs(out.disc);
  mpz_class two = 2, p277 = 277;
  out.two_valuation = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), two.get_mpz_t()));
  out.odd_part = m;
  mpz_class rest = m;
  out.exponent_277 = static_cast<int>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p277.get_mpz_t()));
  out.is_277_power = rest == 1 && out.exponent_277 > 0;
  return out;
}

}  // namespace sslab::curves
