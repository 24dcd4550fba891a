#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sslab/arith.hpp"
#include "sslab/rational.hpp"

namespace sslab::ram {

// Lower-numbering orders |G_0| >= |G_1| >= ... ; every index past the list is trivial.
class RamFiltration {
 public:
  explicit RamFiltration(std::vector<i64> orders, std::string base_field_tag = "");

  const std::vector<i64>& orders() const { return orders_; }
  const std::string& tag() const { return tag_; }

  i64 order(i64 i) const;
  // |G_x| for real x >= 0, i.e. |G_ceil(x)|.
  i64 order_at(const Rational& x) const;
  // Largest i with G_i != 1, or -1 for the trivial group.
  i64 last_nontrivial() const;
  bool is_trivial() const { return last_nontrivial() < 0; }

 private:
  std::vector<i64> orders_;
  std::string tag_;
};

// phi(u) = integral_0^u dt / [G_0 : G_t].
Rational herbrand_phi(const RamFiltration& f, const Rational& u);

// Upper-numbering breakpoints phi(i) at every lower index i with G_i != G_{i+1}.
std::vector<Rational> upper_jumps(const RamFiltration& f);

// 0 when unramified, else phi(c) + 1 with c the last nontrivial lower index.
Rational conductor_exponent(const RamFiltration& f);

// G_x = 1 for every x with phi(x) > 1/(ell-1). A jump exactly at 1/(ell-1) is allowed.
bool check_L4(const RamFiltration& f, i64 ell);

// Tower E >= F >= Q_ell(mu_ell) >= Q_ell. `total` is Gal(E/Q_ell), `sub` is Gal(E/F) and
// `quotient` is Gal(F/Q_ell(mu_ell)) in its own lower numbering.
struct TowerData {
  RamFiltration total;
  RamFiltration sub;
  RamFiltration quotient;
  bool abelian = true;  // caller's assertion that E/Q_ell(mu_ell) is abelian
};

// Throws std::invalid_argument on inconsistent orders and std::domain_error when the
// hypotheses (abelian ell-extension over Q_ell(mu_ell)) are not met.
void validate_tower(const TowerData& t, i64 ell);

struct Lemma31Result {
  bool l4_holds;
  Rational f_top;     // f(E/F)
  Rational f_bottom;  // f(F/Q_ell(mu_ell))
  bool conductors_at_most_2;
  bool equivalence_witnessed;
};

Lemma31Result lemma31_check(const TowerData& t, i64 ell);

struct PlaceData {
  i64 prime;  // 0 denotes the infinite place
  i64 ramification_degree;
  std::optional<RamFiltration> filtration;  // required at the place ell when ramified
};

struct ControlledProfile {
  bool galois_with_mu_ell;  // (L1), supplied by the caller
  std::vector<PlaceData> places;
};

struct ControlledVerdict {
  bool l1, l2, l3, l4;
  bool controlled() const { return l1 && l2 && l3 && l4; }
};

ControlledVerdict controlled_predicate(const ControlledProfile& profile, i64 ell, const std::set<i64>& s);

}  // namespace sslab::ram
