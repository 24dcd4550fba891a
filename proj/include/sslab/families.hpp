#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sslab/curves.hpp"

namespace sslab::families {

using curves::WeierstrassCurve;

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct NSInstance {
  i64 u;  // u = 1 mod 4
  i64 p;  // u^2 + 64
  WeierstrassCurve curve_delta_p;
  WeierstrassCurve curve_delta_p2;
};

// Instance for a given u = 1 mod 4 with u^2 + 64 prime; both discriminant identities are
// verified and a std::logic_error is thrown if either fails.
NSInstance ns_instance(i64 u);

// All instances with p <= bound, sorted by p; parallel scan over |u| with a serial twin.
std::vector<NSInstance> ns_enumerate(i64 bound);
std::vector<NSInstance> ns_enumerate_serial(i64 bound);

// Primes treated outside the u^2 + 64 parametrisation.
std::vector<i64> ns_special_primes();

struct SearchHit {
  i64 ell;
  i64 p;
  WeierstrassCurve curve;  // reduced minimal model
  mpq_class j;
};

struct SearchBox {
  i64 radius = 8;  // |a_i| <= radius for every coefficient
};

// Curves in the coefficient box with |disc| = p^k (p prime <= bound, multiplicative at p) and a
// rational point of order ell, deduplicated by j-invariant, sorted by (p, j).
std::vector<SearchHit> torsion_prime_power_search(i64 ell, i64 bound, SearchBox box = {});
std::vector<SearchHit> torsion_prime_power_search_serial(i64 ell, i64 bound, SearchBox box = {});

// The above restricted to odd ell in {3, 5, 7} and bound <= 10^4.
std::vector<SearchHit> miyawaki_search(i64 ell, i64 bound, SearchBox box = {});

// Regression file lines: "ell p a1 a2 a3 a4 a6".
std::vector<SearchHit> read_search_data(const std::string& path);
void write_search_data(const std::string& path, const std::vector<SearchHit>& hits);
std::string default_data_path();

struct ClassMember {
  WeierstrassCurve curve;
  mpq_class j;
  int disc_valuation;  // ord_p of the minimal discriminant
  curves::Reduction reduction;
  int depth;
  int parent;  // index of the member it was reached from, -1 for the seed
};

// Closure of {seed} under ell-isogenies with rational kernel, up to the given depth.
std::vector<ClassMember> isogeny_class(const WeierstrassCurve& seed, i64 ell, i64 p, int depth = 3);
// Several seeds known to lie in one isogeny class; members are deduplicated by j-invariant.
std::vector<ClassMember> isogeny_class(const std::vector<WeierstrassCurve>& seeds, i64 ell, i64 p, int depth = 3);

struct MaximalReport {
  i64 ell, p;
  std::vector<ClassMember> class_members;
  size_t dagger_index;
  int dagger_valuation;
  int expected_valuation;  // 4 at (2, 17), ell otherwise
  bool dagger_ordinary_known;  // good reduction at ell
  bool dagger_ordinary;
  std::string seed_source;  // "neumann-setzer", "data-file" or "search"
};

// Throws ContractViolation when the maximum of ord_ell(ord_p disc) is not attained uniquely.
MaximalReport identify_dagger(i64 ell, i64 p, const std::vector<ClassMember>& members);

// Seed lookup, class closure and identification for a Neumann-Setzer or torsion-search pair.
MaximalReport dagger(i64 ell, i64 p, const std::string& data_path = default_data_path());

struct CongruenceEntry {
  i64 p;
  i64 residue;  // p mod 8 for ell = 2, p mod 3 for ell = 3
  bool pass;
};

struct CongruenceReport {
  i64 ell;
  i64 modulus;
  std::vector<CongruenceEntry> entries;
  bool all_pass;
};

CongruenceReport theorem11_congruences(i64 ell, const std::vector<i64>& primes);

// For ell = 2: the 2-division cubic of e has discriminant of even p-valuation and splits into
// linear factors modulo p.
struct SplitProxy {
  int cubic_disc_valuation;
  int roots_mod_p;  // counted with multiplicity
  bool holds;
};
SplitProxy two_division_split_proxy(const WeierstrassCurve& e, i64 p);

}  // namespace sslab::families
