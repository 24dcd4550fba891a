#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/arith.hpp"
#include "sslab/polynomial.hpp"

namespace sslab::curves {

class SingularCurveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
  mpz_class a1, a2, a3, a4, a6;

  // "a1,a2,a3,a4,a6"
  static WeierstrassCurve parse(const std::string& text);
  std::string str() const;
  bool operator==(const WeierstrassCurve& o) const;
};

struct CurveInvariants {
  mpz_class b2, b4, b6, b8, c4, c6, disc;
  mpq_class j;
};

CurveInvariants invariants(const WeierstrassCurve& e);

// ord_p of a nonzero integer or rational.
int ord(const mpz_class& n, i64 p);
int ord(const mpq_class& q, i64 p);

enum class Reduction { good, multiplicative, additive };
std::string to_string(Reduction r);

struct LocalData {
  i64 p;
  Reduction kind;
  i64 component_order;  // ord_p(disc) when multiplicative, 1 otherwise
  int disc_valuation;
};

// The model is assumed minimal at p.
LocalData local_data(const WeierstrassCurve& e, i64 p);

// #E(F_q) for a prime power q <= 10^6 at which the model has good reduction. Over F_p the count
// is a sum of Legendre symbols over x (parallel in x); prime powers use the Frobenius recurrence.
i64 count_points(const WeierstrassCurve& e, i64 q);
i64 count_points_serial(const WeierstrassCurve& e, i64 q);
i64 trace_of_frobenius(const WeierstrassCurve& e, i64 q);
bool is_ordinary(const WeierstrassCurve& e, i64 ell);

struct Point {
  mpq_class x, y;
  bool infinity = false;
  static Point at_infinity() { return Point{0, 0, true}; }
  bool operator==(const Point& o) const;
};

bool on_curve(const WeierstrassCurve& e, const Point& p);
Point negate(const WeierstrassCurve& e, const Point& p);
Point add(const WeierstrassCurve& e, const Point& p, const Point& q);
Point multiply(const WeierstrassCurve& e, const Point& p, i64 n);

// f_n: psi_n for odd n and psi_n / psi_2 for even n, as polynomials in x (1 <= n <= 7).
poly::ZPoly division_polynomial(const WeierstrassCurve& e, int n);
// 4x^3 + b2 x^2 + 2 b4 x + b6
poly::ZPoly two_division_cubic(const WeierstrassCurve& e);

// All rational points of exact order ell (ell prime, ell <= 7).
std::vector<Point> rational_torsion_points(const WeierstrassCurve& e, i64 ell);

struct TorsionResult {
  bool found = false;
  std::optional<Point> witness;
};
TorsionResult has_rational_ell_torsion(const WeierstrassCurve& e, i64 ell);

// Curve with kernel <P> isogenous to e, returned as a global minimal model.
WeierstrassCurve velu_quotient(const WeierstrassCurve& e, const Point& p, i64 ell);

// Change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t applied to e.
WeierstrassCurve transform(const WeierstrassCurve& e, const mpz_class& u, const mpz_class& r, const mpz_class& s,
                           const mpz_class& t);

// Global minimal model with a1, a3 in {0, 1} and a2 in {-1, 0, 1}. Primes whose twelfth power
// could divide the discriminant are found by trial division up to 10^6.
WeierstrassCurve minimal_model(const WeierstrassCurve& e);

struct Genus2Disc {
  mpz_class disc;       // disc(4P + Q^2)
  mpz_class odd_part;   // |disc| with all factors of 2 removed
  int two_valuation;
  int exponent_277;     // odd_part = 277^exponent_277 when is_277_power
  bool is_277_power;
};

// y^2 + Q(x) y = P(x) with deg P = 5 and deg Q <= 3.
Genus2Disc hyperelliptic_odd_disc(const poly::ZPoly& p, const poly::ZPoly& q);

}  // namespace sslab::curves
