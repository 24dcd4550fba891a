#pragma once

#include <string>
#include <vector>

#include "sslab/arith.hpp"

namespace sslab::cyclo {

struct SplittingData {
  i64 ell, p;
  i64 f;   // order of p mod ell (1 when ell = 2)
  i64 g;   // primes of Q(mu_ell) over p
  i64 g2;  // primes of Q(mu_2ell) over p
  bool cor410_condition;  // g2 >= 2, and p = 1 mod 8 when ell = 2
};

SplittingData splitting(i64 ell, i64 p);

// F_ell-rank of the product over primes v | p of F = Q(mu_2ell) of U_v / U_v^ell.
i64 gamma_rank(i64 ell, i64 p);

struct GammaSReport {
  i64 ell, p;
  i64 gamma_rank;
  i64 unit_image_rank;
  i64 bound;  // gamma_rank - unit_image_rank
  std::string method;       // "box" or "kernel-generators"
  i64 box_radius;           // exponent box is [-box_radius, box_radius]
  i64 box_size;             // number of unit exponent vectors scanned (0 for kernel-generators)
  i64 congruent_units;      // scanned units that are 1 mod lambda^2
  i64 exact_rank;           // rank from generators of the full congruence subgroup
  bool stabilized;          // box rank agrees with exact_rank (always true for kernel-generators)
};

// Default: scan the exponent box when it has at most `box_cap` points, otherwise use the exact
// congruence-subgroup generators.
GammaSReport unit_image_rank(i64 ell, i64 p, i64 box_cap = 200'000'000);
GammaSReport unit_image_rank_serial(i64 ell, i64 p, i64 box_cap = 200'000'000);

// Images in Gamma_S (one F_ell coordinate per prime over p) and in (Z[zeta]/lambda^2)^x of the
// generators -1, zeta, u_b (2 <= b <= (ell-1)/2). Exposed for testing.
struct UnitGenerators {
  std::vector<std::string> names;
  std::vector<std::vector<i64>> gamma_image;  // per generator, length gamma_rank
  std::vector<i64> tame_log;   // discrete log of the F_ell^x part, mod ell-1
  std::vector<i64> wild_part;  // t-coefficient ratio, mod ell
  i64 ell;
};
UnitGenerators unit_generators(i64 ell, i64 p);

// Rank over F_ell of a set of vectors.
i64 rank_mod(std::vector<std::vector<i64>> rows, i64 ell);

}  // namespace sslab::cyclo
