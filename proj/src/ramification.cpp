#include "sslab/ramification.hpp"

#include <algorithm>
#include <stdexcept>

namespace sslab::ram {

namespace {

bool is_power_of(i64 n, i64 p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

RamFiltration::RamFiltration(std::vector<i64> orders, std::string base_field_tag)
    : orders_(std::move(orders)), tag_(std::move(base_field_tag)) {
  if (orders_.empty()) throw std::invalid_argument("RamFiltration: empty order list");
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] < 1) throw std::invalid_argument("RamFiltration: orders must be positive");
    if (i > 0 && orders_[i - 1] % orders_[i] != 0) {
      throw std::invalid_argument("RamFiltration: each order must divide its predecessor");
    }
  }
}

i64 RamFiltration::order(i64 i) const {
  if (i < 0) throw std::invalid_argument("RamFiltration::order: negative index");
  return i < static_cast<i64>(orders_.size()) ? orders_[static_cast<std::size_t>(i)] : 1;
}

i64 RamFiltration::order_at(const Rational& x) const {
  if (x < Rational(0)) throw std::invalid_argument("RamFiltration::order_at: negative index");
  return order(x.ceil());
}

i64 RamFiltration::last_nontrivial() const {
  for (i64 i = static_cast<i64>(orders_.size()) - 1; i >= 0; --i)
    if (orders_[static_cast<std::size_t>(i)] > 1) return i;
  return -1;
}

Rational herbrand_phi(const RamFiltration& f, const Rational& u) {
  if (u < Rational(0)) throw std::invalid_argument("herbrand_phi: u must be non-negative");
  const i64 g0 = f.order(0);
  const i64 whole = u.floor();
  const i64 listed = static_cast<i64>(f.orders().size());
  Rational acc(0);
  for (i64 i = 1; i <= std::min(whole, listed); ++i) acc = acc + Rational(f.order(i), g0);
  if (whole > listed) acc = acc + Rational(whole - listed, g0);
  Rational frac = u - Rational(whole);
  if (frac != Rational(0)) acc = acc + frac * Rational(f.order(whole + 1), g0);
  return acc;
}

std::vector<Rational> upper_jumps(const RamFiltration& f) {
  std::vector<Rational> out;
  for (i64 i = 0; i <= f.last_nontrivial(); ++i)
    if (f.order(i) != f.order(i + 1)) out.push_back(herbrand_phi(f, Rational(i)));
  return out;
}

Rational conductor_exponent(const RamFiltration& f) {
  i64 c = f.last_nontrivial();
  if (c < 0) return Rational(0);
  return herbrand_phi(f, Rational(c)) + Rational(1);
}

bool check_L4(const RamFiltration& f, i64 ell) {
  if (ell < 2) throw std::invalid_argument("check_L4: ell must be prime");
  i64 c = f.last_nontrivial();
  if (c < 0) return true;
  // phi is increasing, so the largest phi-value on a nontrivial G_x is phi(c).
  return herbrand_phi(f, Rational(c)) <= Rational(1, ell - 1);
}

void validate_tower(const TowerData& t, i64 ell) {
  if (!is_prime(static_cast<u64>(ell))) throw std::invalid_argument("validate_tower: ell must be prime");
  if (!t.abelian) {
    throw std::domain_error("lemma31: E/Q_ell(mu_ell) must be an abelian ell-extension; other towers are refused");
  }
  const auto& d = t.total;
  if (d.order(0) != (ell - 1) * d.order(1)) {
    throw std::domain_error("lemma31: total group must have tame ramification degree exactly ell-1");
  }
  // H = Gal(E/Q_ell(mu_ell)) in lower numbering: H_0 = D_1, H_i = D_i for i >= 1.
  auto h = [&](i64 i) { return i == 0 ? d.order(1) : d.order(i); };
  const i64 len = static_cast<i64>(std::max({d.orders().size(), t.sub.orders().size(), t.quotient.orders().size()})) + 1;
  for (i64 i = 0; i <= len; ++i) {
    if (!is_power_of(h(i), ell)) throw std::domain_error("lemma31: E/Q_ell(mu_ell) is not an ell-extension");
    i64 n = t.sub.order(i);
    if (h(i) % n != 0) throw std::invalid_argument("lemma31: sub order does not divide total order");
    if (i > 0) {
      i64 q_prev = h(i - 1) / t.sub.order(i - 1), q = h(i) / n;
      if (q_prev % q != 0) throw std::invalid_argument("lemma31: images H_i N / N do not form a chain");
    }
  }
  if (t.sub.order(0) != t.sub.order(1)) throw std::invalid_argument("lemma31: sub is an ell-group, so N_0 = N_1");
  // Herbrand: the quotient's lower filtration is H_x N / N placed at phi_{E/F}(x). Breakpoints
  // of x -> ceil(phi_{E/F}(x)) have denominators dividing |N_0|, so a grid of step 1/(2|N_0|)
  // samples every piece.
  const i64 n0 = t.sub.order(0);
  const i64 xmax = len + 1 + n0 * (static_cast<i64>(t.quotient.orders().size()) + 1);
  for (i64 k = 0; k <= 2 * n0 * xmax; ++k) {
    Rational x(k, 2 * n0);
    i64 lhs = t.quotient.order_at(herbrand_phi(t.sub, x));
    i64 idx = x.ceil();
    i64 rhs = h(idx) / t.sub.order(idx);
    if (lhs != rhs) {
      throw std::invalid_argument("lemma31: quotient filtration is inconsistent with Herbrand's theorem at x = " + x.str());
    }
  }
}

Lemma31Result lemma31_check(const TowerData& t, i64 ell) {
  validate_tower(t, ell);
  Lemma31Result r{};
  r.l4_holds = check_L4(t.total, ell);
  r.f_top = conductor_exponent(t.sub);
  r.f_bottom = conductor_exponent(t.quotient);
  r.conductors_at_most_2 = r.f_top <= Rational(2) && r.f_bottom <= Rational(2);
  r.equivalence_witnessed = r.l4_holds == r.conductors_at_most_2;
  return r;
}

ControlledVerdict controlled_predicate(const ControlledProfile& profile, i64 ell, const std::set<i64>& s) {
  ControlledVerdict v{profile.galois_with_mu_ell, true, true, true};
  for (const auto& place : profile.places) {
    if (place.ramification_degree < 1) throw std::invalid_argument("controlled_predicate: ramification degree must be positive");
    const bool ramified = place.ramification_degree > 1;
    if (place.prime == 0) continue;
    if (place.prime == ell) {
      if (place.filtration) {
        v.l4 = v.l4 && check_L4(*place.filtration, ell);
      } else if (ramified) {
        throw std::invalid_argument("controlled_predicate: ramified place over ell needs a filtration");
      }
      continue;
    }
    if (s.count(place.prime) != 0) {
      if (ell % place.ramification_degree != 0) v.l3 = false;
    } else if (ramified) {
      v.l2 = false;
    }
  }
  return v;
}

}  // namespace sslab::ram
