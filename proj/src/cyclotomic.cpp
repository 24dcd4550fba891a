#include "sslab/cyclotomic.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sslab/parallel.hpp"

namespace sslab::cyclo {

namespace {

void require_pair(i64 ell, i64 p) {
  if (ell < 2 || ell > 19 || !is_prime(static_cast<u64>(ell))) throw std::invalid_argument("ell must be a prime <= 19");
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("p must be prime");
  if (p == ell) throw std::invalid_argument("p must differ from ell");
}

// ---- arithmetic in F_p[x] / (mu), mu monic ------------------------------------------------

using Poly = std::vector<i64>;  // low degree first

struct FiniteField {
  i64 p;
  Poly mu;  // monic, degree F
  int degree() const { return static_cast<int>(mu.size()) - 1; }

  Poly reduce(Poly a) const {
    const int f = degree();
    for (auto& c : a) c = mod(c, p);
    for (int k = static_cast<int>(a.size()) - 1; k >= f; --k) {
      i64 c = a[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      for (int j = 0; j <= f; ++j) {
        auto pos = static_cast<std::size_t>(k - f + j);
        a[pos] = mod(a[pos] - mulmod(c, mu[static_cast<std::size_t>(j)], p), p);
      }
    }
    a.resize(static_cast<std::size_t>(f), 0);
    return a;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + mulmod(a[i], b[j], p), p);
    }
    return reduce(r);
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r(static_cast<std::size_t>(degree()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0), p);
    return r;
  }
  Poly one() const { return reduce(Poly{1}); }
  Poly constant(i64 c) const { return reduce(Poly{c}); }
  Poly power(const Poly& a, const mpz_class& e) const {
    Poly result = one(), base = reduce(a);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
      if (mpz_tstbit(e.get_mpz_t(), i) != 0U) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  bool is_one(const Poly& a) const { return a == one(); }
};

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Remainder of a by b over F_p (b nonzero).
Poly poly_rem(Poly a, const Poly& b, i64 p) {
  a = poly_trim(std::move(a));
  const Poly bt = poly_trim(b);
  const i64 inv_lead = invmod(bt.back(), p);
  while (a.size() >= bt.size()) {
    i64 c = mulmod(a.back(), inv_lead, p);
    std::size_t shift = a.size() - bt.size();
    for (std::size_t j = 0; j < bt.size(); ++j) a[shift + j] = mod(a[shift + j] - mulmod(c, bt[j], p), p);
    a = poly_trim(std::move(a));
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [q, e] : factor(n)) out.push_back(q);
  return out;
}

// Deterministic search for a monic irreducible polynomial of degree f over F_p (Rabin's test).
Poly irreducible_polynomial(i64 p, int f) {
  if (f == 1) return Poly{0, 1};
  const std::vector<i64> rs = prime_divisors(f);
  for (i64 idx = 1;; ++idx) {
    Poly mu(static_cast<std::size_t>(f) + 1, 0);
    mu[static_cast<std::size_t>(f)] = 1;
    i64 t = idx;
    for (int j = 0; j < f && t > 0; ++j) {
      mu[static_cast<std::size_t>(j)] = t % p;
      t /= p;
    }
    if (t > 0) break;
    if (mu[0] == 0) continue;
    FiniteField k{p, mu};
    Poly x = k.reduce(Poly{0, 1});
    // frob[i] = x^(p^i) mod mu
    std::vector<Poly> frob{x};
    for (int i = 1; i <= f; ++i) frob.push_back(k.power(frob.back(), mpz_class(p)));
    if (frob[static_cast<std::size_t>(f)] != x) continue;
    bool ok = true;
    for (i64 r : rs) {
      Poly d = frob[static_cast<std::size_t>(f / r)];
      d[1] = mod(d[1] - 1, p);
      if (poly_gcd(d, mu, p).size() != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return mu;
  }
  throw std::logic_error("no irreducible polynomial found");
}

struct ResidueSetup {
  FiniteField field;
  mpz_class q;
  std::vector<Poly> zetas;   // image of the chosen zeta under each prime v | p
  std::vector<Poly> eta_powers;  // powers of a primitive ell-th root, for discrete logs
};

ResidueSetup residue_setup(i64 ell, i64 p) {
  const i64 m = ell == 2 ? 4 : ell;
  const auto f = static_cast<int>(multiplicative_order(p, m));
  FiniteField k{p, irreducible_polynomial(p, f)};
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(f));
  if (mpz_divisible_ui_p(mpz_class(q - 1).get_mpz_t(), static_cast<unsigned long>(m)) == 0) {
    throw std::logic_error("residue field does not contain the m-th roots of unity");
  }
  const mpz_class cofactor = (q - 1) / m;
  const std::vector<i64> rs = prime_divisors(m);
  Poly zeta0;
  bool found = false;
  for (i64 idx = 2; !found; ++idx) {
    Poly y(static_cast<std::size_t>(f), 0);
    i64 t = idx;
    for (int j = 0; j < f; ++j) {
      y[static_cast<std::size_t>(j)] = t % p;
      t /= p;
    }
    if (t > 0) throw std::logic_error("failed to find a primitive root of unity in the residue field");
    Poly z = k.power(y, cofactor);
    bool primitive = true;
    for (i64 r : rs)
      if (k.is_one(k.power(z, mpz_class(m / r)))) primitive = false;
    if (primitive) {
      zeta0 = z;
      found = true;
    }
  }
  ResidueSetup s{k, q, {}, {}};
  std::set<i64> seen;
  for (i64 kk = 1; kk < m; ++kk) {
    if (std::gcd(kk, m) != 1 || seen.count(kk) != 0) continue;
    for (i64 j = 0, x = kk; j < f; ++j, x = mod(x * p, m)) seen.insert(x);
    s.zetas.push_back(k.power(zeta0, mpz_class(kk)));
  }
  Poly eta = k.power(zeta0, mpz_class(m / ell));
  Poly acc = k.one();
  for (i64 j = 0; j < ell; ++j) {
    s.eta_powers.push_back(acc);
    acc = k.mul(acc, eta);
  }
  return s;
}

i64 residue_log(const ResidueSetup& s, const Poly& x, i64 ell) {
  if (std::all_of(x.begin(), x.end(), [](i64 c) { return c == 0; })) {
    throw std::logic_error("unit vanishes in a residue field");
  }
  Poly w = s.field.power(x, (s.q - 1) / ell);
  for (i64 j = 0; j < ell; ++j)
    if (s.eta_powers[static_cast<std::size_t>(j)] == w) return j;
  throw std::logic_error("(q-1)/ell power is not an ell-th root of unity");
}

i64 discrete_log_mod_ell(i64 a, i64 ell) {
  if (ell == 2) return 0;
  i64 g = 2;
  while (multiplicative_order(g, ell) != ell - 1) ++g;
  i64 x = 1;
  for (i64 k = 0; k < ell - 1; ++k) {
    if (x == mod(a, ell)) return k;
    x = mulmod(x, g, ell);
  }
  throw std::logic_error("discrete log failed");
}

// Incremental row echelon basis over F_ell.
struct Span {
  i64 ell;
  std::vector<std::vector<i64>> rows;
  std::vector<std::size_t> pivots;

  bool add(std::vector<i64> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      i64 c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod(v[j] - c * rows[r][j], ell);
    }
    auto it = std::find_if(v.begin(), v.end(), [](i64 c) { return c != 0; });
    if (it == v.end()) return false;
    auto piv = static_cast<std::size_t>(it - v.begin());
    i64 inv = invmod(v[piv], ell);
    for (auto& c : v) c = mulmod(c, inv, ell);
    for (auto& row : rows) {
      i64 c = row[piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) row[j] = mod(row[j] - c * v[j], ell);
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
  i64 rank() const { return static_cast<i64>(rows.size()); }
};

struct BoxGeometry {
  i64 radius;
  std::vector<i64> extents;  // per generator: number of exponent values
  std::vector<i64> offsets;  // exponent = digit - offset
  i64 size;
};

BoxGeometry box_geometry(i64 ell, std::size_t generators, i64 cap) {
  BoxGeometry b{2 * ell, {}, {}, 1};
  const i64 m = ell == 2 ? 4 : ell;
  // -1 and zeta have finite order, so their full cycles suffice.
  b.extents = {2, m};
  b.offsets = {0, 0};
  for (std::size_t i = 2; i < generators; ++i) {
    b.extents.push_back(4 * ell + 1);
    b.offsets.push_back(2 * ell);
  }
  for (i64 e : b.extents) {
    if (b.size > cap / e) {
      b.size = -1;
      return b;
    }
    b.size *= e;
  }
  return b;
}

struct ScanResult {
  Span span;
  i64 congruent = 0;
};

// Decode the index-th exponent vector of the box and test the lambda^2 congruence.
bool decode_and_test(const UnitGenerators& gens, const BoxGeometry& box, i64 index, std::vector<i64>& exps) {
  const i64 ell = gens.ell;
  i64 tame = 0, wild = 0;
  for (std::size_t i = 0; i < box.extents.size(); ++i) {
    i64 digit = index % box.extents[i];
    index /= box.extents[i];
    exps[i] = digit - box.offsets[i];
    tame += exps[i] * gens.tame_log[i];
    wild += exps[i] * gens.wild_part[i];
  }
  return mod(tame, std::max<i64>(ell - 1, 1)) == 0 && mod(wild, ell) == 0;
}

std::vector<i64> gamma_vector(const UnitGenerators& gens, const std::vector<i64>& exps) {
  const std::size_t width = gens.gamma_image.empty() ? 0 : gens.gamma_image[0].size();
  std::vector<i64> v(width, 0);
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) v[j] = mod(v[j] + exps[i] * gens.gamma_image[i][j], gens.ell);
  return v;
}

// Generators of the congruence subgroup by Schreier's lemma on its finite quotient.
i64 exact_rank(const UnitGenerators& gens) {
  const i64 ell = gens.ell;
  const i64 tmod = std::max<i64>(ell - 1, 1);
  const std::size_t k = gens.names.size();
  auto key = [&](i64 t, i64 w) { return t * ell + w; };
  std::vector<std::vector<i64>> path(static_cast<std::size_t>(tmod * ell));
  std::vector<bool> seen(path.size(), false);
  std::vector<std::pair<i64, i64>> queue{{0, 0}};
  seen[0] = true;
  path[0] = std::vector<i64>(k, 0);
  Span span{ell, {}, {}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [t, w] = queue[head];
    for (std::size_t i = 0; i < k; ++i) {
      i64 t2 = mod(t + gens.tame_log[i], tmod), w2 = mod(w + gens.wild_part[i], ell);
      std::vector<i64> next = path[static_cast<std::size_t>(key(t, w))];
      next[i] += 1;
      auto slot = static_cast<std::size_t>(key(t2, w2));
      if (!seen[slot]) {
        seen[slot] = true;
        path[slot] = next;
        queue.emplace_back(t2, w2);
      } else {
        for (std::size_t j = 0; j < k; ++j) next[j] -= path[slot][j];
        span.add(gamma_vector(gens, next));
      }
    }
  }
  return span.rank();
}

GammaSReport finish(i64 ell, i64 p, const UnitGenerators& gens, const BoxGeometry& box, const ScanResult* scan) {
  GammaSReport r{};
  r.ell = ell;
  r.p = p;
  r.gamma_rank = gamma_rank(ell, p);
  r.exact_rank = exact_rank(gens);
  r.box_radius = box.radius;
  if (scan != nullptr) {
    r.method = "box";
    r.box_size = box.size;
    r.congruent_units = scan->congruent;
    r.unit_image_rank = scan->span.rank();
    r.stabilized = r.unit_image_rank == r.exact_rank;
  } else {
    r.method = "kernel-generators";
    r.box_size = 0;
    r.congruent_units = 0;
    r.unit_image_rank = r.exact_rank;
    r.stabilized = true;
  }
  r.bound = r.gamma_rank - r.unit_image_rank;
  return r;
}

}  // namespace

SplittingData splitting(i64 ell, i64 p) {
  require_pair(ell, p);
  SplittingData s{};
  s.ell = ell;
  s.p = p;
  s.f = ell == 2 ? 1 : multiplicative_order(p, ell);
  s.g = (ell - 1) / s.f;
  s.g2 = ell == 2 ? (mod(p, 4) == 1 ? 2 : 1) : s.g;
  s.cor410_condition = s.g2 >= 2 && (ell != 2 || mod(p, 8) == 1);
  return s;
}

i64 gamma_rank(i64 ell, i64 p) { return splitting(ell, p).g2; }

UnitGenerators unit_generators(i64 ell, i64 p) {
  require_pair(ell, p);
  const ResidueSetup setup = residue_setup(ell, p);
  if (static_cast<i64>(setup.zetas.size()) != gamma_rank(ell, p)) throw std::logic_error("prime count mismatch");
  const FiniteField& k = setup.field;
  UnitGenerators g;
  g.ell = ell;
  // Residue images per generator: -1, zeta, u_b = 1 + zeta + ... + zeta^(b-1).
  std::vector<std::vector<Poly>> values;
  std::vector<std::pair<i64, i64>> lambda2;  // (alpha, beta) with image alpha + beta t
  g.names.push_back("-1");
  values.emplace_back(setup.zetas.size(), k.constant(-1));
  lambda2.emplace_back(mod(-1, ell), 0);
  g.names.push_back("zeta");
  values.push_back(setup.zetas);
  lambda2.emplace_back(1, 1 % ell);
  for (i64 b = 2; b <= (ell - 1) / 2; ++b) {
    g.names.push_back("u_" + std::to_string(b));
    std::vector<Poly> vals;
    for (const Poly& z : setup.zetas) {
      Poly acc = k.constant(0), pw = k.one();
      for (i64 j = 0; j < b; ++j) {
        acc = k.add(acc, pw);
        pw = k.mul(pw, z);
      }
      vals.push_back(acc);
    }
    values.push_back(vals);
    lambda2.emplace_back(mod(b, ell), mod(b * (b - 1) / 2, ell));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<i64> img;
    for (const Poly& v : values[i]) img.push_back(residue_log(setup, v, ell));
    g.gamma_image.push_back(img);
    auto [alpha, beta] = lambda2[i];
    g.tame_log.push_back(discrete_log_mod_ell(alpha, ell));
    g.wild_part.push_back(mulmod(beta, invmod(alpha, ell), ell));
  }
  return g;
}

i64 rank_mod(std::vector<std::vector<i64>> rows, i64 ell) {
  Span s{ell, {}, {}};
  for (auto& r : rows) s.add(std::move(r));
  return s.rank();
}

GammaSReport unit_image_rank_serial(i64 ell, i64 p, i64 box_cap) {
  const UnitGenerators gens = unit_generators(ell, p);
  const BoxGeometry box = box_geometry(ell, gens.names.size(), box_cap);
  if (box.size < 0) return finish(ell, p, gens, box, nullptr);
  ScanResult scan{Span{ell, {}, {}}, 0};
  std::vector<i64> exps(gens.names.size());
  for (i64 idx = 0; idx < box.size; ++idx) {
    if (!decode_and_test(gens, box, idx, exps)) continue;
    ++scan.congruent;
    scan.span.add(gamma_vector(gens, exps));
  }
  return finish(ell, p, gens, box, &scan);
}

GammaSReport unit_image_rank(i64 ell, i64 p, i64 box_cap) {
  const UnitGenerators gens = unit_generators(ell, p);
  const BoxGeometry box = box_geometry(ell, gens.names.size(), box_cap);
  if (box.size < 0) return finish(ell, p, gens, box, nullptr);
  configure_threads();
  ScanResult total{Span{ell, {}, {}}, 0};
#pragma omp parallel
  {
    Span local{ell, {}, {}};
    i64 count = 0;
    std::vector<i64> exps(gens.names.size());
#pragma omp for schedule(static) nowait
    for (i64 idx = 0; idx < box.size; ++idx) {
      if (!decode_and_test(gens, box, idx, exps)) continue;
      ++count;
      if (local.rank() < static_cast<i64>(gens.gamma_image[0].size())) local.add(gamma_vector(gens, exps));
    }
#pragma omp critical
    {
      total.congruent += count;
      for (auto& row : local.rows) total.span.add(row);
    }
  }
  return finish(ell, p, gens, box, &total);
}

}  // namespace sslab::cyclo
