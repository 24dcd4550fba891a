#include "sslab/families.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "sslab/parallel.hpp"

namespace sslab::families {

using curves::Point;

NSInstance ns_instance(i64 u) {
  if (mod(u, 4) != 1) throw std::invalid_argument("ns_instance: u must be 1 mod 4");
  const i64 p = u * u + 64;
  if (!is_prime(static_cast<u64>(p))) throw std::invalid_argument("ns_instance: u^2 + 64 is not prime");
  NSInstance inst{u, p, {}, {}};
  const mpz_class c = (u - 1) / 4;
  inst.curve_delta_p = WeierstrassCurve{1, c, 0, -1, 0};
  inst.curve_delta_p2 = WeierstrassCurve{1, c, 0, 4, u};
  const mpz_class pz = static_cast<long>(p);
  if (curves::invariants(inst.curve_delta_p).disc != pz)
    throw std::logic_error("ns_instance: disc identity Delta = p failed at u = " + std::to_string(u));
  if (curves::invariants(inst.curve_delta_p2).disc != -pz * pz)
    throw std::logic_error("ns_instance: disc identity Delta = -p^2 failed at u = " + std::to_string(u));
  return inst;
}

namespace {

i64 signed_u(i64 n) { return mod(n, 4) == 1 ? n : -n; }

void require_ns_bound(i64 bound) {
  if (bound < 65) throw std::invalid_argument("ns_enumerate: bound must be at least 65");
}

}  // namespace

std::vector<NSInstance> ns_enumerate_serial(i64 bound) {
  require_ns_bound(bound);
  std::vector<NSInstance> out;
  for (i64 n = 1; n * n + 64 <= bound; n += 2) {
    if (is_prime(static_cast<u64>(n * n + 64))) out.push_back(ns_instance(signed_u(n)));
  }
  return out;
}

std::vector<NSInstance> ns_enumerate(i64 bound) {
  require_ns_bound(bound);
  configure_threads();
  const i64 count = (isqrt(bound - 64) + 1) / 2;  // odd n = 2k + 1 < sqrt(bound - 64) + 1
  std::vector<std::vector<NSInstance>> slots(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic, 16)
  for (i64 k = 0; k < count; ++k) {
    const i64 n = 2 * k + 1;
    if (n * n + 64 <= bound && is_prime(static_cast<u64>(n * n + 64)))
      slots[static_cast<size_t>(k)].push_back(ns_instance(signed_u(n)));
  }
  std::vector<NSInstance> out;
  for (auto& s : slots)
    for (auto& inst : s) out.push_back(std::move(inst));
  return out;
}

std::vector<i64> ns_special_primes() { return {17}; }

namespace {

using Coeffs = std::array<i64, 5>;

struct Candidate {
  Coeffs a;
  i64 p;
};

// Single prime p with |disc| = p^k, p <= bound, or 0.
i64 prime_power_base(i64 disc, i64 bound) {
  i64 m = disc < 0 ? -disc : disc;
  if (m < 2) return 0;
  i64 p = 0;
  for (i64 d = 2; d * d <= m && d <= bound; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) {
    if (m > bound) return 0;
    p = m;  // no factor up to sqrt(m), so m is prime
  }
  while (m % p == 0) m /= p;
  return m == 1 ? p : 0;
}

i64 count_small(const Coeffs& a, i64 q) {
  i64 n = 1;
  for (i64 x = 0; x < q; ++x)
    for (i64 y = 0; y < q; ++y) {
      i64 lhs = y * y + a[0] * x * y + a[2] * y;
      i64 rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
      if (mod(lhs - rhs, q) == 0) ++n;
    }
  return n;
}

// Necessary condition for a rational point of order ell: ell | #E(F_q) at several good q.
bool passes_count_filter(const Coeffs& a, i64 disc, i64 ell) {
  int used = 0;
  for (i64 q : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    if (q == ell || disc % q == 0) continue;
    if (count_small(a, q) % ell != 0) return false;
    if (++used == 6) break;
  }
  return true;
}

std::optional<Candidate> screen(const Coeffs& a, i64 ell, i64 bound) {
  const i64 b2 = a[0] * a[0] + 4 * a[1];
  const i64 b4 = 2 * a[3] + a[0] * a[2];
  const i64 b6 = a[2] * a[2] + 4 * a[4];
  const i64 b8 = a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] + a[1] * a[2] * a[2] - a[3] * a[3];
  const i64 disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) return std::nullopt;
  const i64 c4 = b2 * b2 - 24 * b4;
  const i64 p = prime_power_base(disc, bound);
  if (p == 0 || c4 % p == 0) return std::nullopt;
  if (!passes_count_filter(a, disc, ell)) return std::nullopt;
  return Candidate{a, p};
}

Coeffs decode(i64 index, i64 radius) {
  const i64 width = 2 * radius + 1;
  Coeffs a{};
  for (int k = 4; k >= 0; --k) {
    a[static_cast<size_t>(k)] = index % width - radius;
    index /= width;
  }
  return a;
}

void require_search(i64 ell, i64 bound, const SearchBox& box) {
  if (ell != 2 && ell != 3 && ell != 5 && ell != 7) throw std::invalid_argument("search: ell must be 2, 3, 5 or 7");
  if (bound < 2) throw std::invalid_argument("search: bound must be at least 2");
  if (box.radius < 1 || box.radius > 12) throw std::invalid_argument("search: box radius must be in [1, 12]");
}

std::vector<SearchHit> confirm(i64 ell, std::vector<Candidate> cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.p, x.a) < std::tie(y.p, y.a);
  });
  std::vector<SearchHit> out;
  std::set<std::pair<i64, mpq_class>> seen;
  for (const auto& c : cands) {
    WeierstrassCurve e{c.a[0], c.a[1], c.a[2], c.a[3], c.a[4]};
    const mpq_class j = curves::invariants(e).j;
    if (seen.count({c.p, j})) continue;
    if (curves::rational_torsion_points(e, ell).empty()) continue;
    seen.insert({c.p, j});
    out.push_back(SearchHit{ell, c.p, curves::minimal_model(e), j});
  }
  std::sort(out.begin(), out.end(), [](const SearchHit& x, const SearchHit& y) {
    if (x.p != y.p) return x.p < y.p;
    return x.j < y.j;
  });
  return out;
}

}  // namespace

std::vector<SearchHit> torsion_prime_power_search_serial(i64 ell, i64 bound, SearchBox box) {
  require_search(ell, bound, box);
  const i64 width = 2 * box.radius + 1;
  const i64 total = width * width * width * width * width;
  std::vector<Candidate> cands;
  for (i64 idx = 0; idx < total; ++idx) {
    if (auto c = screen(decode(idx, box.radius), ell, bound)) cands.push_back(*c);
  }
  return confirm(ell, std::move(cands));
}

std::vector<SearchHit> torsion_prime_power_search(i64 ell, i64 bound, SearchBox box) {
  require_search(ell, bound, box);
  configure_threads();
  const i64 width = 2 * box.radius + 1;
  const i64 outer = width * width;
  const i64 inner = width * width * width;
  std::vector<Candidate> cands;
#pragma omp parallel
  {
    std::vector<Candidate> local;
#pragma omp for schedule(dynamic, 4) nowait
    for (i64 o = 0; o < outer; ++o) {
      for (i64 i = 0; i < inner; ++i) {
        if (auto c = screen(decode(o * inner + i, box.radius), ell, bound)) local.push_back(*c);
      }
    }
#pragma omp critical(sslab_search_merge)
    cands.insert(cands.end(), local.begin(), local.end());
  }
  return confirm(ell, std::move(cands));
}

std::vector<SearchHit> miyawaki_search(i64 ell, i64 bound, SearchBox box) {
  if (ell != 3 && ell != 5 && ell != 7) throw std::invalid_argument("miyawaki_search: ell must be 3, 5 or 7");
  if (bound > 10'000) throw std::invalid_argument("miyawaki_search: bound must be at most 10^4");
  return torsion_prime_power_search(ell, bound, box);
}

std::string default_data_path() { return std::string(SSLAB_DATA_DIR) + "/miyawaki_curves.dat"; }

std::vector<SearchHit> read_search_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file " + path);
  std::vector<SearchHit> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    SearchHit h{};
    std::string a[5];
    if (!(ls >> h.ell >> h.p >> a[0] >> a[1] >> a[2] >> a[3] >> a[4]))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'ell p a1 a2 a3 a4 a6'");
    h.curve = WeierstrassCurve::parse(a[0] + "," + a[1] + "," + a[2] + "," + a[3] + "," + a[4]);
    h.j = curves::invariants(h.curve).j;
    out.push_back(h);
  }
  return out;
}

void write_search_data(const std::string& path, const std::vector<SearchHit>& hits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write data file " + path);
  out << "# ell p a1 a2 a3 a4 a6\n";
  for (const auto& h : hits) {
    out << h.ell << ' ' << h.p << ' ' << h.curve.a1.get_str() << ' ' << h.curve.a2.get_str() << ' '
        << h.curve.a3.get_str() << ' ' << h.curve.a4.get_str() << ' ' << h.curve.a6.get_str() << '\n';
  }
}

namespace {

// Generators of the distinct subgroups of order ell among the rational ell-torsion points.
std::vector<Point> subgroup_generators(const WeierstrassCurve& e, i64 ell) {
  std::vector<Point> gens;
  std::set<mpq_class> covered;
  for (const auto& pt : curves::rational_torsion_points(e, ell)) {
    if (covered.count(pt.x)) continue;
    gens.push_back(pt);
    Point cur = pt;
    for (i64 k = 1; k < ell; ++k) {
      covered.insert(cur.x);
      cur = curves::add(e, cur, pt);
    }
  }
  return gens;
}

ClassMember make_member(const WeierstrassCurve& e, i64 p, int depth, int parent) {
  const auto inv = curves::invariants(e);
  const auto ld = curves::local_data(e, p);
  return ClassMember{e, inv.j, ld.disc_valuation, ld.kind, depth, parent};
}

}  // namespace

std::vector<ClassMember> isogeny_class(const WeierstrassCurve& seed, i64 ell, i64 p, int depth) {
  return isogeny_class(std::vector<WeierstrassCurve>{seed}, ell, p, depth);
}

std::vector<ClassMember> isogeny_class(const std::vector<WeierstrassCurve>& seeds, i64 ell, i64 p, int depth) {
  std::vector<ClassMember> members;
  std::set<mpq_class> seen;
  for (const auto& seed : seeds) {
    ClassMember m = make_member(curves::minimal_model(seed), p, 0, -1);
    if (seen.insert(m.j).second) members.push_back(m);
  }
  for (size_t head = 0; head < members.size(); ++head) {
    if (members[head].depth >= depth) continue;
    const WeierstrassCurve cur = members[head].curve;
    const int d = members[head].depth;
    for (const auto& gen : subgroup_generators(cur, ell)) {
      WeierstrassCurve next = curves::velu_quotient(cur, gen, ell);
      mpq_class j = curves::invariants(next).j;
      if (seen.count(j)) continue;
      seen.insert(j);
      members.push_back(make_member(next, p, d + 1, static_cast<int>(head)));
    }
  }
  return members;
}

MaximalReport identify_dagger(i64 ell, i64 p, const std::vector<ClassMember>& members) {
  if (members.empty()) throw std::invalid_argument("identify_dagger: empty class");
  MaximalReport r{};
  r.ell = ell;
  r.p = p;
  r.class_members = members;
  int best = -1;
  size_t best_index = 0;
  int ties = 0;
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].reduction != curves::Reduction::multiplicative)
      throw ContractViolation("identify_dagger: member " + members[i].curve.str() + " is not multiplicative at p");
    const int v = valuation(members[i].disc_valuation, ell);
    if (v > best) {
      best = v;
      best_index = i;
      ties = 1;
    } else if (v == best) {
      ++ties;
    }
  }
  if (ties != 1) throw ContractViolation("identify_dagger: maximal ell-part is attained by more than one member");
  r.dagger_index = best_index;
  r.dagger_valuation = members[best_index].disc_valuation;
  r.expected_valuation = (ell == 2 && p == 17) ? 4 : static_cast<int>(ell);
  const auto inv = curves::invariants(members[best_index].curve);
  r.dagger_ordinary_known = mpz_divisible_ui_p(inv.disc.get_mpz_t(), static_cast<unsigned long>(ell)) == 0;
  r.dagger_ordinary = r.dagger_ordinary_known && curves::is_ordinary(members[best_index].curve, ell);
  return r;
}

namespace {

std::optional<i64> ns_u_for(i64 p) {
  if (p <= 64) return std::nullopt;
  i64 n = isqrt(p - 64);
  if (n * n + 64 != p || n % 2 == 0) return std::nullopt;
  return signed_u(n);
}

}  // namespace

MaximalReport dagger(i64 ell, i64 p, const std::string& data_path) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("dagger: p must be prime");
  std::vector<WeierstrassCurve> seeds;
  std::string source;
  if (ell == 2 && p != 17) {
    auto u = ns_u_for(p);
    if (!u) throw std::invalid_argument("dagger: p is neither 17 nor of the form u^2 + 64");
    seeds.push_back(ns_instance(*u).curve_delta_p2);
    source = "neumann-setzer";
  } else {
    std::ifstream probe(data_path);
    if (probe) {
      for (const auto& h : read_search_data(data_path))
        if (h.ell == ell && h.p == p) seeds.push_back(h.curve);
      if (!seeds.empty()) source = "data-file";
    }
    if (seeds.empty()) {
      for (const auto& h : torsion_prime_power_search(ell, p))
        if (h.p == p) seeds.push_back(h.curve);
      source = "search";
    }
    if (seeds.empty()) throw std::invalid_argument("dagger: no curve with rational ell-torsion found for this (ell, p)");
  }
  MaximalReport r = identify_dagger(ell, p, isogeny_class(seeds, ell, p, 3));
  r.seed_source = source;
  return r;
}

CongruenceReport theorem11_congruences(i64 ell, const std::vector<i64>& primes) {
  if (ell != 2 && ell != 3) throw std::invalid_argument("theorem11_congruences: ell must be 2 or 3");
  CongruenceReport r{ell, ell == 2 ? 8 : 3, {}, true};
  for (i64 p : primes) {
    CongruenceEntry e{p, mod(p, r.modulus), mod(p, r.modulus) == 1};
    r.all_pass = r.all_pass && e.pass;
    r.entries.push_back(e);
  }
  return r;
}

SplitProxy two_division_split_proxy(const WeierstrassCurve& e, i64 p) {
  if (p < 3 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("split proxy: p must be an odd prime");
  const poly::ZPoly cubic = curves::two_division_cubic(e);
  SplitProxy s{};
  s.cubic_disc_valuation = curves::ord(poly::discriminant(cubic), p);
  std::vector<i64> c;
  for (const auto& z : cubic) c.push_back(static_cast<i64>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p))));
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  bool progress = true;
  while (c.size() > 1 && progress) {
    progress = false;
    for (i64 x = 0; x < p; ++x) {
      i64 acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod(mulmod(acc, x, p) + *it, p);
      if (acc != 0) continue;
      std::vector<i64> q(c.size() - 1);
      i64 carry = 0;
      for (size_t k = c.size() - 1; k >= 1; --k) {
        carry = mod(mulmod(carry, x, p) + c[k], p);
        q[k - 1] = carry;
      }
      c = q;
      ++s.roots_mod_p;
      progress = true;
      break;
    }
  }
  s.holds = s.cubic_disc_valuation % 2 == 0 && s.roots_mod_p == 3;
  return s;
}

}  // namespace sslab::families
