#include <random>
#include <stdexcept>

#include "doctest.h"
#include "sslab/arith.hpp"
#include "sslab/curves.hpp"

using namespace sslab;
using namespace sslab::curves;

namespace {

WeierstrassCurve W(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }

// GF(p^k) as polynomials modulo a monic irreducible of degree k, coefficients low first.
struct FiniteField {
  i64 p;
  int k;
  std::vector<i64> modulus;  // monic, degree k

  using Elt = std::vector<i64>;

  static bool irreducible(const std::vector<i64>& f, i64 p) {
    // Degree <= 3: irreducible iff no root; linear polynomials always are.
    if (f.size() <= 2) return true;
    for (i64 x = 0; x < p; ++x) {
      i64 v = 0;
      for (auto it = f.rbegin(); it != f.rend(); ++it) v = (v * x + *it) % p;
      if (v == 0) return false;
    }
    return true;
  }

  FiniteField(i64 p_, int k_) : p(p_), k(k_) {
    std::vector<i64> f(static_cast<size_t>(k + 1), 0);
    f[static_cast<size_t>(k)] = 1;
    for (i64 code = 0;; ++code) {
      i64 c = code;
      for (int i = 0; i < k; ++i) {
        f[static_cast<size_t>(i)] = c % p;
        c /= p;
      }
      if (irreducible(f, p)) break;
    }
    modulus = f;
  }

  i64 size() const { return ipow(p, k); }
  Elt element(i64 code) const {
    Elt e(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      e[static_cast<size_t>(i)] = code % p;
      code /= p;
    }
    return e;
  }
  Elt constant(const mpz_class& z) const {
    Elt e(static_cast<size_t>(k), 0);
    mpz_class r = z % p;
    if (r < 0) r += p;
    e[0] = r.get_si();
    return e;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = (a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)]) % p;
    return c;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<i64> t(static_cast<size_t>(2 * k), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        t[static_cast<size_t>(i + j)] = (t[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % p;
    for (int d = 2 * k - 1; d >= k; --d) {
      const i64 c = t[static_cast<size_t>(d)];
      if (c == 0) continue;
      for (int i = 0; i <= k; ++i)
        t[static_cast<size_t>(d - k + i)] = ((t[static_cast<size_t>(d - k + i)] - c * modulus[static_cast<size_t>(i)]) % p + p) % p;
    }
    return Elt(t.begin(), t.begin() + k);
  }
  bool is_zero(const Elt& a) const {
    for (i64 v : a)
      if (v != 0) return false;
    return true;
  }
};

// Affine solutions of the Weierstrass equation over GF(p^k), plus the point at infinity.
i64 brute_count(const WeierstrassCurve& e, i64 p, int k) {
  const FiniteField F(p, k);
  const auto a1 = F.constant(e.a1), a2 = F.constant(e.a2), a3 = F.constant(e.a3), a4 = F.constant(e.a4),
             a6 = F.constant(e.a6);
  const auto minus_one = F.constant(-1);
  i64 count = 1;
  for (i64 xc = 0; xc < F.size(); ++xc) {
    const auto x = F.element(xc);
    const auto x2 = F.mul(x, x), x3 = F.mul(x2, x);
    auto rhs = F.add(F.add(x3, F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
    for (i64 yc = 0; yc < F.size(); ++yc) {
      const auto y = F.element(yc);
      auto lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(a1, x), y), F.mul(a3, y)));
      if (F.is_zero(F.add(lhs, F.mul(minus_one, rhs)))) ++count;
    }
  }
  return count;
}

WeierstrassCurve random_curve(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  for (;;) {
    WeierstrassCurve e = W(d(rng) % 2, d(rng), d(rng) % 2, d(rng), d(rng));
    try {
      invariants(e);
      return e;
    } catch (const SingularCurveError&) {
    }
  }
}

}  // namespace

TEST_CASE("parsing and printing") {
  const auto e = WeierstrassCurve::parse("1,-1,0,-1,0");
  CHECK(e == W(1, -1, 0, -1, 0));
  CHECK(e.str() == "[1,-1,0,-1,0]");
  CHECK_THROWS(WeierstrassCurve::parse("1,2,3"));
  CHECK_THROWS(WeierstrassCurve::parse("1,2,x,4,5"));
}

TEST_CASE("invariants of the reference curves") {
  CHECK(invariants(W(1, -1, 0, -1, 0)).disc == 73);
  CHECK(invariants(W(1, -1, 0, 4, -3)).disc == -5329);
  CHECK(invariants(W(0, 0, 0, -1, 0)).disc == 64);
  CHECK(invariants(W(0, -1, 1, 0, 0)).disc == -11);
  CHECK(invariants(W(0, -1, 1, 0, 0)).j == mpq_class(-4096, 11));
  CHECK_THROWS_AS(invariants(W(0, 0, 0, 0, 0)), SingularCurveError);
}

TEST_CASE("invariant identities on random curves") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 500; ++t) {
    const auto inv = invariants(random_curve(rng, 50));
    CHECK(4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4);
    CHECK(1728 * inv.disc == inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6);
  }
}

TEST_CASE("local data") {
  const auto a = local_data(W(1, -1, 0, 4, -3), 73);
  CHECK(a.kind == Reduction::multiplicative);
  CHECK(a.component_order == 2);
  const auto b = local_data(W(1, -1, 0, -1, 0), 73);
  CHECK(b.kind == Reduction::multiplicative);
  CHECK(b.component_order == 1);
  CHECK(local_data(W(1, -1, 0, -1, 0), 5).kind == Reduction::good);
  CHECK(local_data(W(0, 0, 0, -1, 0), 2).kind == Reduction::additive);
  for (const auto& [e, p] : std::vector<std::pair<WeierstrassCurve, i64>>{
           {W(1, -1, 0, 4, -3), 73}, {W(0, -1, 1, -10, -20), 11}, {W(0, 1, 1, -9, -15), 19}, {W(1, -1, 1, -1, -14), 17}}) {
    const auto inv = invariants(e);
    CHECK(ord(inv.disc, p) == -ord(inv.j, p));
  }
}

TEST_CASE("point counts against brute force over prime fields") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    const auto e = random_curve(rng, 30);
    const auto inv = invariants(e);
    for (i64 p : {2, 3, 5, 7, 11, 13, 31}) {
      if (inv.disc % p == 0) {
        CHECK_THROWS_AS(count_points(e, p), std::invalid_argument);
        continue;
      }
      const i64 n = count_points(e, p);
      CHECK(n == brute_count(e, p, 1));
      CHECK((n - p - 1) * (n - p - 1) <= 4 * p);
    }
  }
}

TEST_CASE("point counts against brute force over extension fields") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 40; ++t) {
    const auto e = random_curve(rng, 20);
    const auto inv = invariants(e);
    for (auto [p, k] : std::vector<std::pair<i64, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
      if (inv.disc % p == 0) continue;
      CHECK(count_points(e, ipow(p, k)) == brute_count(e, p, k));
    }
  }
  CHECK_THROWS(count_points(W(1, -1, 0, -1, 0), 12));
}

TEST_CASE("reference counts and ordinariness") {
  CHECK(count_points(W(1, -1, 0, -1, 0), 2) == 2);
  CHECK(trace_of_frobenius(W(1, -1, 0, -1, 0), 2) == 1);
  CHECK(count_points(W(0, 0, 0, 0, 1), 5) == 6);
  CHECK_FALSE(is_ordinary(W(0, 0, 0, 0, 1), 5));
  CHECK(is_ordinary(W(1, -1, 0, -1, 0), 2));
  CHECK_THROWS(is_ordinary(W(1, -1, 0, -1, 0), 73));
}

TEST_CASE("parallel and serial point counts agree") {
  const auto e = W(0, 1, 1, -9, -15);
  for (i64 q : {101, 7919, 65536, 999983}) CHECK(count_points(e, q) == count_points_serial(e, q));
}

TEST_CASE("group law") {
  const auto e = W(0, 0, 1, -1, 0);  // 37a, (0,0) has infinite order
  const Point p{0, 0};
  CHECK(on_curve(e, p));
  const Point q = multiply(e, p, 5);
  CHECK(on_curve(e, q));
  CHECK(add(e, multiply(e, p, 2), multiply(e, p, 3)) == q);
  CHECK(add(e, p, negate(e, p)).infinity);
  CHECK(multiply(e, p, 6) == add(e, q, p));
}

TEST_CASE("division polynomials vanish exactly at torsion abscissae") {
  struct Case {
    WeierstrassCurve e;
    Point pt;
    int order;
  };
  const std::vector<Case> cases{{W(0, -1, 1, 0, 0), {0, 0}, 5},
                                {W(0, 1, 1, 1, 0), {0, 0}, 3},
                                {W(1, -1, 1, -3, 3), {1, 0}, 7},
                                {W(1, 0, 1, 4, -6), {2, 2}, 6}};
  for (const auto& c : cases) {
    REQUIRE(on_curve(c.e, c.pt));
    CHECK(multiply(c.e, c.pt, c.order).infinity);
    for (int n = 3; n <= 7; ++n) {
      const bool torsion = multiply(c.e, c.pt, n).infinity;
      CHECK((poly::evaluate(division_polynomial(c.e, n), c.pt.x) == 0) == torsion);
    }
  }
  const auto e37 = W(0, 0, 1, -1, 0);
  for (int n = 3; n <= 7; ++n) CHECK(poly::evaluate(division_polynomial(e37, n), mpq_class(0)) != 0);
}

TEST_CASE("rational torsion") {
  const auto t5 = has_rational_ell_torsion(W(0, -1, 1, 0, 0), 5);
  REQUIRE(t5.found);
  CHECK(multiply(W(0, -1, 1, 0, 0), *t5.witness, 5).infinity);
  CHECK(has_rational_ell_torsion(W(1, -1, 0, -1, 0), 2).found);
  CHECK(has_rational_ell_torsion(W(1, -1, 0, 4, -3), 2).found);
  CHECK_FALSE(has_rational_ell_torsion(W(0, 0, 0, 0, 2), 2).found);
  CHECK_FALSE(has_rational_ell_torsion(W(0, 0, 1, -1, 0), 3).found);
  CHECK(rational_torsion_points(W(0, -1, 1, 0, 0), 5).size() == 4);
  CHECK(has_rational_ell_torsion(W(1, -1, 1, -3, 3), 7).found);
}

TEST_CASE("minimal models undo scaling") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto e = minimal_model(random_curve(rng, 20));
    for (long u : {2L, 3L, 6L}) {
      const WeierstrassCurve big{e.a1 * u, e.a2 * u * u, e.a3 * u * u * u, e.a4 * u * u * u * u,
                                 e.a6 * u * u * u * u * u * u};
      const auto m = minimal_model(big);
      CHECK(invariants(m).disc == invariants(e).disc);
      CHECK(invariants(m).j == invariants(e).j);
    }
  }
}

TEST_CASE("isogeny quotients") {
  // The Delta = -p^2 curve mod its 2-torsion point is the Delta = p curve.
  const auto big = W(1, -1, 0, 4, -3);
  const auto pts = rational_torsion_points(big, 2);
  REQUIRE(pts.size() == 1);
  const auto q = velu_quotient(big, pts[0], 2);
  CHECK(invariants(q).j == invariants(W(1, -1, 0, -1, 0)).j);
  CHECK(ord(invariants(q).disc, 73) == 1);

  // The conductor 11 class: valuations 1, 5, 1 along 11a3 -> 11a1 -> 11a2.
  const auto e3 = W(0, -1, 1, 0, 0);
  const auto p5 = rational_torsion_points(e3, 5);
  REQUIRE_FALSE(p5.empty());
  const auto e1 = velu_quotient(e3, p5[0], 5);
  CHECK(e1 == W(0, -1, 1, -10, -20));
  CHECK(ord(invariants(e1).disc, 11) == 5);
  const auto p5b = rational_torsion_points(e1, 5);
  REQUIRE_FALSE(p5b.empty());
  const auto e2 = velu_quotient(e1, p5b[0], 5);
  CHECK(e2 == W(0, -1, 1, -7820, -263580));
  CHECK(ord(invariants(e2).disc, 11) == 1);

  CHECK_THROWS(velu_quotient(e3, Point::at_infinity(), 5));
  CHECK_THROWS(velu_quotient(e3, p5[0], 3));
}

TEST_CASE("genus two discriminant") {
  const poly::ZPoly p{0, -1, 2, -2, 0, 1};
  const auto g = hyperelliptic_odd_disc(p, poly::ZPoly{1});
  CHECK(abs(g.disc) == 70912);
  CHECK(g.odd_part == 277);
  CHECK(g.two_valuation == 8);
  CHECK(g.is_277_power);
  CHECK(g.exponent_277 == 1);
  CHECK_THROWS(hyperelliptic_odd_disc(poly::ZPoly{0, 0, 0, 0, 0, 1}, poly::ZPoly{0}));
  const auto h = hyperelliptic_odd_disc(poly::ZPoly{0, -1, 0, 0, 0, 1}, poly::ZPoly{0});
  CHECK(abs(h.disc) == abs(poly::discriminant(poly::ZPoly{0, -4, 0, 0, 0, 4})));
  CHECK_FALSE(h.is_277_power);
}

TEST_CASE("genus two discriminant on random sextics") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> d(-5, 5);
  int tested = 0;
  while (tested < 100) {
    poly::ZPoly p{d(rng), d(rng), d(rng), d(rng), d(rng), 1};
    poly::ZPoly q{d(rng), d(rng), d(rng), 1};
    const poly::ZPoly r = poly::add(poly::scale(p, 4), poly::mul(q, q));
    const mpz_class disc = poly::discriminant(r);
    if (disc == 0) {
      CHECK_THROWS(hyperelliptic_odd_disc(p, q));
      continue;
    }
    ++tested;
    const auto g = hyperelliptic_odd_disc(p, q);
    CHECK(abs(g.disc) == abs(disc));
    mpz_class odd = abs(disc);
    while (odd % 2 == 0) odd /= 2;
    CHECK(g.odd_part == odd);
  }
}
