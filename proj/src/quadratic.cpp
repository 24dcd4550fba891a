#include "sslab/quadratic.hpp"

#include <stdexcept>

#include "sslab/parallel.hpp"

namespace sslab::quadratic {

bool QuadForm::is_reduced() const {
  if (a <= 0 || discriminant() >= 0) return false;
  const i64 abs_b = b < 0 ? -b : b;
  if (!(abs_b <= a && a <= c)) return false;
  if ((abs_b == a || a == c) && b < 0) return false;
  return true;
}

namespace {

bool squarefree(i64 n) {
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return n != 0;
}

void require_fundamental(i64 d) {
  if (d >= 0) throw std::invalid_argument("class_number: discriminant must be negative");
  if (!is_fundamental_discriminant(d)) throw std::invalid_argument("class_number: discriminant is not fundamental");
}

// Number of reduced forms with leading coefficient a.
i64 count_for_a(i64 d, i64 a) {
  i64 count = 0;
  for (i64 b = -a + 1; b <= a; ++b) {
    if (mod(b - d, 2) != 0) continue;
    i64 num = b * b - d;
    if (num % (4 * a) != 0) continue;
    i64 c = num / (4 * a);
    if (c < a) continue;
    if (c == a && b < 0) continue;
    ++count;
  }
  return count;
}

}  // namespace

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  i64 m = d / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

std::vector<QuadForm> reduced_forms(i64 d) {
  require_fundamental(d);
  std::vector<QuadForm> out;
  for (i64 a = 1; 3 * a * a <= -d; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - d;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced()) out.push_back(f);
    }
  }
  return out;
}

i64 class_number_serial(i64 d) {
  require_fundamental(d);
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= -d; ++a) h += count_for_a(d, a);
  return h;
}

i64 class_number(i64 d) {
  require_fundamental(d);
  configure_threads();
  const i64 amax = isqrt(-d / 3);
  i64 h = 0;
#pragma omp parallel for reduction(+ : h) schedule(dynamic, 64)
  for (i64 a = 1; a <= amax; ++a) h += count_for_a(d, a);
  return h;
}

ControlledExtensionReport prop37_report(i64 p) {
  if (p == 2) throw std::invalid_argument("prop37_report: p = 2 is excluded");
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("prop37_report: p must be an odd prime");
  ControlledExtensionReport r{};
  r.p = p;
  r.disc = mod(p, 4) == 3 ? -p : -4 * p;
  r.h = class_number(r.disc);
  r.n = 1;
  for (i64 h = r.h; h % 2 == 0; h /= 2) r.n *= 2;
  r.gal_mk_order = 2 * r.n;
  r.degree_over_q = 4 * r.n;
  r.dihedral = true;
  return r;
}

}  // namespace sslab::quadratic
