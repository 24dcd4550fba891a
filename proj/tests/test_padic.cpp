#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sslab/padic.hpp"
#include "suites.hpp"

using namespace sslab;
using namespace sslab::padic;

TEST_CASE("context arithmetic and valuations") {
  const Context c(3, 4);
  CHECK(c.modulus() == 81);
  CHECK(c.valuation(0) == 4);
  CHECK(c.valuation(27) == 3);
  CHECK(c.valuation(18) == 2);
  CHECK(c.mul(c.unit_inverse(18), 2) == 1);
  CHECK(c.divide_power(54, 3) == 2);
  CHECK(c.power(4) == 0);
  CHECK_THROWS(Context(4, 2));
}

TEST_CASE("matrix inverse and determinant") {
  const Context c(5, 3);
  const auto m = Matrix::from_rows(c, {{1, 2, 0}, {3, 1, 4}, {0, 4, 7}});
  const i64 det = c.reduce(1 * (1 * 7 - 4 * 4) - 2 * (3 * 7 - 4 * 0));
  CHECK(m.determinant() == det);
  CHECK(m * m.inverse() == Matrix::identity(c, 3));
  CHECK_THROWS_AS(Matrix::from_rows(c, {{5, 0}, {0, 1}}).inverse(), std::domain_error);
}

TEST_CASE("smith form diagonalises") {
  std::mt19937_64 rng(11);
  for (i64 ell : {2, 3, 5}) {
    const Context c(ell, 3);
    std::uniform_int_distribution<i64> d(0, c.modulus() - 1);
    for (int t = 0; t < 50; ++t) {
      Matrix m(c, 3, 4);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m.set(i, j, d(rng) * (t % 3 == 0 ? ell : 1));
      const auto sf = smith_form(m);
      const Matrix dm = sf.u * m * sf.v;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
          const i64 expect = i == j ? c.power(sf.divisors[static_cast<size_t>(i)]) : 0;
          CHECK(dm.at(i, j) == expect);
        }
      const Matrix k = kernel(m);
      CHECK((m * k).is_zero());
    }
  }
}

TEST_CASE("column reduction is canonical and span preserving") {
  std::mt19937_64 rng(5);
  for (i64 ell : {2, 3}) {
    const int n = 2, r = 3;
    const oracle::Ambient amb(ell, n, r);
    const Context c(ell, n);
    std::uniform_int_distribution<i64> d(0, c.modulus() - 1);
    for (int t = 0; t < 40; ++t) {
      oracle::Columns cols(3, std::vector<i64>(3));
      for (auto& col : cols)
        for (auto& v : col) v = d(rng);
      const auto l = Lattice::span(oracle::to_matrix(c, r, cols));
      CHECK(amb.members(l) == amb.subgroup(cols));
      CHECK(Lattice::span(l.basis()) == l);
      CHECK(l.log_order() == amb.log_count(amb.subgroup(cols)));
    }
  }
}

TEST_CASE("declared rank collapse is a precision-loss error") {
  const Context c(2, 3);
  const auto m = Matrix::from_columns(c, 2, {{1, 0}, {2, 0}});
  CHECK_THROWS_AS(Lattice::with_rank(m, 2), PrecisionLossError);
  CHECK(Lattice::span(m).declared_rank() == 1);
}

TEST_CASE("purity examples") {
  const Context c(2, 3);
  CHECK(is_pure(Lattice::span(Matrix::from_columns(c, 2, {{1, 1}}))));
  CHECK_FALSE(is_pure(Lattice::span(Matrix::from_columns(c, 2, {{2, 0}}))));
  CHECK_FALSE(is_pure(Lattice::span(Matrix::from_columns(c, 2, {{1, 2}, {0, 4}}))));
  CHECK(is_pure(Lattice::full(c, 2)));
  CHECK(is_pure(Lattice::zero(c, 2)));
}

TEST_CASE("intersection at finite precision keeps precision artifacts") {
  // span(1,1) and span(1,3) meet only in 0 over Z_2, but agree modulo 2.
  const Context c(2, 4);
  const auto x = Lattice::span(Matrix::from_columns(c, 2, {{1, 1}}));
  const auto y = Lattice::span(Matrix::from_columns(c, 2, {{1, 3}}));
  const auto z = intersect(x, y);
  CHECK_FALSE(z.is_zero());
  CHECK_FALSE(is_pure(z));
  CHECK(z.pivot_valuations() == std::vector<int>{3});
  const auto w = oracle::exact_intersection({{1, 1}}, {{1, 3}}, 2);
  CHECK(w.empty());
}

TEST_CASE("orthogonal complement is an involution for the standard pairing") {
  const Context c(3, 2);
  const auto e = standard_pairing(c, 3);
  CHECK(e.is_perfect());
  const auto x = Lattice::span(Matrix::from_columns(c, 3, {{1, 3, 0}, {0, 0, 6}}));
  CHECK(orthogonal(orthogonal(x, e), e) == x);
  Pairing degenerate{Matrix::from_rows(c, {{3, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
  CHECK_THROWS(orthogonal(x, degenerate));
}

TEST_CASE("pure lattice laws against exhaustive enumeration") {
  suites::LatticeSuiteOptions opt;
  opt.oracle_cases = 300;
  opt.seed = 99;
  const auto res = suites::lattice_suite(opt);
  for (const auto& m : res.messages) MESSAGE(m);
  CHECK(res.cases == 300);
  CHECK(res.failures == 0);
}
