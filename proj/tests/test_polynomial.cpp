#include <algorithm>
#include <random>

#include "doctest.h"
#include "sslab/polynomial.hpp"

using namespace sslab::poly;

namespace {

// Determinant by fraction-free Gaussian elimination.
mpz_class bareiss(std::vector<std::vector<mpz_class>> a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

mpz_class sylvester_resultant(const ZPoly& f, const ZPoly& g) {
  const int m = degree(f), n = degree(g);
  const size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f[static_cast<size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g[static_cast<size_t>(n - j)];
  return bareiss(s);
}

ZPoly random_poly(std::mt19937_64& rng, int deg, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  ZPoly f;
  for (int i = 0; i <= deg; ++i) f.push_back(d(rng));
  if (f.back() == 0) f.back() = 1;
  return f;
}

ZPoly from_linear_factors(const std::vector<std::pair<int, int>>& roots) {
  ZPoly f{1};
  for (auto [num, den] : roots) f = mul(f, ZPoly{-num, den});
  return f;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  const ZPoly f{1, 2, 1};  // (x + 1)^2
  CHECK(degree(f) == 2);
  CHECK(degree(ZPoly{0, 0}) == -1);
  CHECK(mul(ZPoly{1, 1}, ZPoly{1, 1}) == f);
  CHECK(derivative(f) == ZPoly{2, 2});
  CHECK(evaluate(f, mpz_class(3)) == 16);
  CHECK(evaluate(f, mpq_class(1, 2)) == mpq_class(9, 4));
  CHECK(exact_divide(f, ZPoly{1, 1}) == ZPoly{1, 1});
  CHECK_THROWS(exact_divide(f, ZPoly{2, 1}));
  CHECK(content(ZPoly{6, -4, 10}) == 2);
  CHECK(primitive_part(ZPoly{6, -4, 10}) == ZPoly{3, -2, 5});
  CHECK(to_string(ZPoly{-1, 0, 3}) == "3x^2 - 1");
}

TEST_CASE("subresultant resultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> deg(1, 6);
  for (int t = 0; t < 300; ++t) {
    const ZPoly f = random_poly(rng, deg(rng), 9);
    const ZPoly g = random_poly(rng, deg(rng), 9);
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
  CHECK(resultant(ZPoly{-1, 0, 1}, ZPoly{-1, 1}) == 0);
}

TEST_CASE("discriminant equals the root-difference product") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> r(-6, 6), lc(1, 4), n(2, 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> roots;
    for (int i = n(rng); i > 0; --i) roots.push_back(r(rng));
    const int a = lc(rng);
    ZPoly f{a};
    for (int x : roots) f = mul(f, ZPoly{-x, 1});
    mpz_class expect = 1;
    const size_t deg = roots.size();
    for (size_t i = 0; i < 2 * deg - 2; ++i) expect *= a;
    for (size_t i = 0; i < deg; ++i)
      for (size_t j = i + 1; j < deg; ++j) expect *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
    CHECK(discriminant(f) == expect);
  }
  CHECK(discriminant(ZPoly{1, 0, 1}) == -4);
  CHECK(discriminant(ZPoly{-2, 0, 0, 1}) == -108);
}

TEST_CASE("gcd and square-free part") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    const ZPoly h = primitive_part(random_poly(rng, 2, 5));
    const ZPoly f = mul(ZPoly{1, 0, 1}, h);
    const ZPoly g = mul(ZPoly{-2, 0, 0, 1}, h);
    ZPoly d = gcd(f, g);
    if (leading(d) * leading(h) < 0) d = scale(d, -1);
    CHECK(primitive_part(d) == (leading(h) > 0 ? h : scale(h, -1)));
  }
  const ZPoly sq = mul(mul(ZPoly{1, 1}, ZPoly{1, 1}), ZPoly{-3, 1});
  const ZPoly sf = squarefree_part(sq);
  CHECK(degree(sf) == 2);
  CHECK(discriminant(sf) != 0);
}

TEST_CASE("rational roots") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 5), k(1, 4);
  for (int t = 0; t < 150; ++t) {
    std::vector<std::pair<int, int>> roots;
    for (int i = k(rng); i > 0; --i) roots.emplace_back(num(rng), den(rng));
    ZPoly f = mul(from_linear_factors(roots), ZPoly{1, 1, 1});  // times x^2 + x + 1
    std::vector<mpq_class> expect;
    for (auto [a, b] : roots) {
      mpq_class q(a, b);
      q.canonicalize();
      expect.push_back(q);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    auto got = rational_roots(f);
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
  }
  CHECK(rational_roots(ZPoly{2, 0, 1}).empty());
  CHECK(rational_roots(ZPoly{0, 0, 1}) == std::vector<mpq_class>{0});
}
