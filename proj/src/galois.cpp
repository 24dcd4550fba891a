#include "sslab/galois.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "sslab/parallel.hpp"

namespace sslab::galois {

i64 teichmuller(i64 ell, int precision, i64 generator) {
  const Context ctx(ell, precision);
  if (mod(generator, ell) == 0) throw std::invalid_argument("teichmuller: generator must be a unit mod ell");
  const i64 m = ctx.modulus();
  i64 x = mod(generator, ell);
  if (ell == 2) return 1;
  for (int it = 0; it < precision + 1; ++it) {
    i64 f = ctx.sub(powmod(x, static_cast<u64>(ell - 1), m), 1);
    if (f == 0) break;
    i64 df = ctx.mul(ell - 1, powmod(x, static_cast<u64>(ell - 2), m));
    x = ctx.sub(x, ctx.mul(f, invmod(df, m)));
  }
  if (powmod(x, static_cast<u64>(ell - 1), m) != 1) throw std::logic_error("teichmuller: Newton iteration did not converge");
  return x;
}

namespace {

Matrix block_diagonal(const Matrix& block, int d) {
  Matrix out = block;
  for (int i = 1; i < d; ++i) out = out.direct_sum(block);
  return out;
}

Matrix scalar(const Context& ctx, int n, i64 c) { return Matrix::identity(ctx, n).scaled(c); }

}  // namespace

GaloisRep build_rep(i64 ell, int d, i64 s, int precision) {
  if (ell != 2 && ell != 3 && ell != 5) throw std::invalid_argument("build_rep: ell must be 2, 3 or 5");
  if (mod(s, ell) != 0) throw std::invalid_argument("build_rep: s must be divisible by ell");
  if (d < 1 || d > 4) throw std::invalid_argument("build_rep: d must be in [1, 4]");
  if (precision < 3) throw std::invalid_argument("build_rep: precision must be at least 3");
  const Context ctx(ell, precision);
  const i64 generator = ell == 5 ? 2 : (ell == 3 ? 2 : 1);
  const i64 omega = ell == 2 ? ctx.neg(1) : teichmuller(ell, precision, generator);
  const Matrix sig = Matrix::from_rows(ctx, {{1, s}, {0, 1}});
  const Matrix tau = Matrix::from_rows(ctx, {{0, ctx.neg(omega)}, {1, ctx.add(1, omega)}});
  return GaloisRep{ctx, d, s, omega, generator, block_diagonal(sig, d), block_diagonal(tau, d)};
}

IdentityReport verify_prop66(const GaloisRep& rep) {
  const Context& ctx = rep.ctx;
  const int n = 2 * rep.d;
  const i64 ell = ctx.ell();
  const Matrix& sg = rep.sigma;
  const Matrix& t = rep.tau;
  const Matrix sgi = sg.inverse();
  const Matrix t2 = t * t;
  const Matrix sigma_tau = t.inverse() * sg * t;
  const Matrix commutator = sigma_tau * sg - sg * sigma_tau;
  const i64 w = rep.omega;
  const i64 one_plus_w = ctx.add(1, w);
  const Matrix shape = block_diagonal(Matrix::from_rows(ctx, {{1, ctx.mul(2, one_plus_w)}, {0, ctx.neg(1)}}), rep.d);
  const i64 s2 = ctx.mul(rep.s, rep.s);

  IdentityReport r;
  auto push = [&](std::string name, bool applicable, Matrix lhs, Matrix rhs) {
    bool pass = lhs == rhs;
    r.checks.push_back(IdentityCheck{std::move(name), applicable, std::move(lhs), std::move(rhs), pass});
  };
  push("sigma*tau - tau*sigma^-1 = s*1", ell == 2 || ell == 3, sg * t - t * sgi, scalar(ctx, n, rep.s));
  push("sigma*tau^2 - tau^2*sigma^-1 = (1+omega)*s*1", ell == 5, sg * t2 - t2 * sgi,
       scalar(ctx, n, ctx.mul(one_plus_w, rep.s)));
  push("sigma^tau*sigma - sigma*sigma^tau = -s^2*omega*(1 2(1+omega); 0 -1)", ell == 5, commutator,
       shape.scaled(ctx.neg(ctx.mul(s2, w))));
  push("sigma^tau*sigma - sigma*sigma^tau = s^2*omega^-1*(1 2(1+omega); 0 -1)", true, commutator,
       shape.scaled(ctx.mul(s2, ctx.unit_inverse(w))));
  r.all_pass = true;
  for (const auto& c : r.checks)
    if (c.applicable && !c.pass) r.all_pass = false;
  return r;
}

namespace {

padic::Vector flatten(const Matrix& m) {
  padic::Vector v;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

GroupRingSpan group_ring_span(const GaloisRep& rep, int depth) {
  if (rep.d != 1) throw std::invalid_argument("group_ring_span: requires d = 1");
  if (depth < 0) throw std::invalid_argument("group_ring_span: depth must be non-negative");
  const Context& ctx = rep.ctx;
  const std::vector<Matrix> gens{rep.sigma, rep.tau, rep.sigma.inverse(), rep.tau.inverse()};
  std::set<padic::Vector> seen;
  std::vector<Matrix> frontier{Matrix::identity(ctx, 2)};
  std::vector<padic::Vector> all{flatten(frontier[0])};
  seen.insert(all[0]);
  for (int level = 0; level < depth; ++level) {
    std::vector<Matrix> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        Matrix w = m * g;
        auto key = flatten(w);
        if (seen.insert(key).second) {
          all.push_back(key);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  GroupRingSpan out{Lattice::span(Matrix::from_columns(ctx, 4, all)), static_cast<int>(all.size()), true};
  for (int k = 0; k < 4; ++k) {
    padic::Vector e(4, 0);
    e[static_cast<size_t>(k)] = ctx.reduce(rep.s);
    if (!out.span.contains(e)) out.contains_s_matrices = false;
  }
  return out;
}

namespace {

i64 matrix_order(const Matrix& m, int cap) {
  const Matrix id = Matrix::identity(m.context(), m.rows());
  Matrix p = m;
  for (int k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  return -1;
}

}  // namespace

QuotientStructure quotient_group_structure(i64 ell) {
  if (ell != 2 && ell != 3 && ell != 5) throw std::invalid_argument("quotient_group_structure: ell must be 2, 3 or 5");
  const GaloisRep rep = build_rep(ell, 1, ell, 6);
  const IdentityReport ids = verify_prop66(rep);
  const Context mod_ell(ell, 1);
  QuotientStructure q{};
  q.ell = ell;
  const Matrix tau_block = rep.tau;
  q.tau_order = matrix_order(tau_block, 64);
  const i64 expected_tau = ell == 2 ? 2 : ell - 1;

  q.relations.push_back({"sigma = 1 on A[ell] (so sigma^ell = 1)", rep.sigma.reduced_to(1) == Matrix::identity(mod_ell, 2)});
  q.relations.push_back({"tau has order " + std::to_string(expected_tau), q.tau_order == expected_tau});
  if (ell == 2 || ell == 3) {
    q.relations.push_back({"sigma tau = tau sigma^-1 (group-ring identity)", ids.checks[0].pass});
    q.presentation = "<s, t | s^" + std::to_string(ell) + ", t^2, s t = t s^-1>";
    q.quotient_bound = ell == 2 ? "quotient of Z/2 x Z/2" : "quotient of S3";
  } else {
    q.relations.push_back({"sigma tau^2 = tau^2 sigma^-1 (group-ring identity)", ids.checks[1].pass});
    const GroupRingSpan span = group_ring_span(rep, 4);
    const Lattice five_span = padic::image(Matrix::identity(rep.ctx, 4).scaled(5), span.span);
    const bool in_five_span = five_span.contains(flatten(ids.checks[2].lhs));
    q.relations.push_back({"[sigma^tau, sigma] lies in 5 * image of the group ring", ids.checks[2].pass && in_five_span});
    q.relations.push_back({"group ring image contains s * M_2", span.contains_s_matrices});
    q.presentation = "<s, t | s^5, t^4, s t^2 = t^2 s^-1, [t^-1 s t, s]>";
    q.quotient_bound = "H = <s, t^-1 s t> abelian of exponent dividing 5 and rank at most 2; t^2 acts on H by inversion";
  }
  q.all_hold = true;
  for (const auto& r : q.relations) q.all_hold = q.all_hold && r.holds;
  return q;
}

FiltrationData filtration(const GaloisRep& rep, int n) {
  if (n < 1 || n > rep.ctx.precision()) throw std::invalid_argument("filtration: level out of range");
  const Context c(rep.ctx.ell(), n);
  std::vector<padic::Vector> cols;
  for (int j = 0; j < rep.d; ++j) {
    padic::Vector e(static_cast<size_t>(2 * rep.d), 0);
    e[static_cast<size_t>(2 * j)] = 1;
    cols.push_back(e);
  }
  const Lattice m2 = Lattice::span(Matrix::from_columns(c, 2 * rep.d, cols));
  return FiltrationData{m2, m2, padic::image(rep.tau.reduced_to(n), m2)};
}

bool is_stable(const GaloisRep& rep, const Lattice& x) {
  const int n = x.context().precision();
  return x.contains(padic::image(rep.sigma.reduced_to(n), x)) && x.contains(padic::image(rep.tau.reduced_to(n), x));
}

namespace {

void require_small(const GaloisRep& rep, int n) {
  if (n < 1 || n > rep.ctx.precision()) throw std::invalid_argument("stable_submodules: level out of range");
  if (rep.d > 2 || ipow(rep.ctx.ell(), n) > 9)
    throw std::invalid_argument("stable_submodules: size guard exceeded (need ell^n <= 9 and d <= 2)");
}

Lattice cyclic_closure(const Matrix& sg, const Matrix& t, const Context& c, const padic::Vector& v) {
  Lattice cur = Lattice::span(Matrix::from_columns(c, static_cast<int>(v.size()), {v}));
  while (true) {
    std::vector<padic::Vector> gens;
    for (int j = 0; j < cur.basis().cols(); ++j) {
      padic::Vector b = cur.basis().column(j);
      gens.push_back(b);
      gens.push_back(sg * b);
      gens.push_back(t * b);
    }
    if (gens.empty()) return cur;
    Lattice next = Lattice::span(Matrix::from_columns(c, static_cast<int>(v.size()), gens));
    if (next == cur) return cur;
    cur = next;
  }
}

padic::Vector decode_vector(i64 index, i64 base, int len) {
  padic::Vector v(static_cast<size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    v[static_cast<size_t>(k)] = index % base;
    index /= base;
  }
  return v;
}

std::vector<Lattice> close_under_sums(const Context& c, int dim, const std::set<Lattice>& cyclic) {
  std::set<Lattice> all(cyclic.begin(), cyclic.end());
  all.insert(Lattice::zero(c, dim));
  std::vector<Lattice> queue(all.begin(), all.end());
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : cyclic) {
      Lattice y = padic::sum(queue[head], g).lattice;
      if (all.insert(y).second) queue.push_back(y);
    }
  }
  return std::vector<Lattice>(all.begin(), all.end());
}

}  // namespace

std::vector<Lattice> stable_submodules_serial(const GaloisRep& rep, int n) {
  require_small(rep, n);
  const Context c(rep.ctx.ell(), n);
  const Matrix sg = rep.sigma.reduced_to(n), t = rep.tau.reduced_to(n);
  const int dim = 2 * rep.d;
  const i64 base = c.modulus();
  const i64 total = ipow(base, dim);
  std::set<Lattice> cyclic;
  for (i64 idx = 1; idx < total; ++idx) cyclic.insert(cyclic_closure(sg, t, c, decode_vector(idx, base, dim)));
  return close_under_sums(c, dim, cyclic);
}

std::vector<Lattice> stable_submodules(const GaloisRep& rep, int n) {
  require_small(rep, n);
  configure_threads();
  const Context c(rep.ctx.ell(), n);
  const Matrix sg = rep.sigma.reduced_to(n), t = rep.tau.reduced_to(n);
  const int dim = 2 * rep.d;
  const i64 base = c.modulus();
  const i64 total = ipow(base, dim);
  std::set<Lattice> cyclic;
#pragma omp parallel
  {
    std::set<Lattice> local;
#pragma omp for schedule(dynamic, 64) nowait
    for (i64 idx = 1; idx < total; ++idx) local.insert(cyclic_closure(sg, t, c, decode_vector(idx, base, dim)));
#pragma omp critical(sslab_stable_merge)
    cyclic.insert(local.begin(), local.end());
  }
  return close_under_sums(c, dim, cyclic);
}

TransferResult lemma43_transfer(const GaloisRep& rep, const Lattice& kernel, i64 phi_ell, int n) {
  if (phi_ell < 1) throw std::invalid_argument("lemma43_transfer: phi_ell must be positive");
  if (kernel.context().precision() != n || kernel.context().ell() != rep.ctx.ell() || kernel.ambient_rank() != 2 * rep.d)
    throw std::invalid_argument("lemma43_transfer: kernel does not live in (Z/ell^n)^(2d)");
  const FiltrationData f = filtration(rep, n);
  TransferResult r{};
  r.log_kernel_meet_m2 = padic::intersect(kernel, f.m2).log_order();
  r.log_kernel_mod_m1 = kernel.log_order() - padic::intersect(kernel, f.m1).log_order();
  r.kernel_stable = is_stable(rep, kernel);
  const i64 ell = rep.ctx.ell();
  const i64 num = phi_ell * ipow(ell, r.log_kernel_meet_m2);
  const i64 den = ipow(ell, r.log_kernel_mod_m1);
  if (num % den != 0) throw std::domain_error("lemma43_transfer: non-integral component group order");
  r.phi_ell = num / den;
  return r;
}

namespace {

// Tate module of A / kernel, as lift(kernel) + ell^n T scaled into T primitively, at precision M.
Lattice quotient_lattice(const Lattice& kernel, int n, const Context& big) {
  const int dim = kernel.ambient_rank();
  std::vector<padic::Vector> gens;
  for (int j = 0; j < kernel.basis().cols(); ++j) gens.push_back(kernel.basis().column(j));
  for (int i = 0; i < dim; ++i) {
    padic::Vector e(static_cast<size_t>(dim), 0);
    e[static_cast<size_t>(i)] = big.power(n);
    gens.push_back(e);
  }
  const Lattice raw = Lattice::span(Matrix::from_columns(big, dim, gens));
  int k = big.precision();
  for (int j = 0; j < raw.basis().cols(); ++j)
    for (int i = 0; i < dim; ++i) k = std::min(k, big.valuation(raw.basis().at(i, j)));
  std::vector<padic::Vector> scaled;
  for (int j = 0; j < raw.basis().cols(); ++j) {
    padic::Vector v = raw.basis().column(j);
    for (auto& x : v) x = big.divide_power(x, k);
    scaled.push_back(v);
  }
  for (int i = 0; i < dim; ++i) {
    padic::Vector e(static_cast<size_t>(dim), 0);
    e[static_cast<size_t>(i)] = big.power(n - k);
    scaled.push_back(e);
  }
  return Lattice::span(Matrix::from_columns(big, dim, scaled));
}

bool sigma_trivial_first_layer(const GaloisRep& rep, const Lattice& l) {
  const Context& big = l.context();
  const int m = big.precision();
  const Matrix sm1 = rep.sigma.reduced_to(m) - Matrix::identity(big, 2 * rep.d);
  const Lattice ell_l = padic::image(Matrix::identity(big, 2 * rep.d).scaled(big.ell()), l);
  return ell_l.contains(padic::image(sm1, l));
}

}  // namespace

MaximalSearchReport find_ell_maximal(const GaloisRep& rep, i64 phi_start, int n_max) {
  if (rep.s == 0) throw std::invalid_argument("find_ell_maximal: s = 0 describes good reduction and is rejected");
  if (phi_start < 1) throw std::invalid_argument("find_ell_maximal: phi_start must be positive");
  if (n_max < 1 || n_max + 1 > rep.ctx.precision()) throw std::invalid_argument("find_ell_maximal: n_max out of range");
  const i64 ell = rep.ctx.ell();
  const Context big(ell, n_max + 1);
  MaximalSearchReport r{};
  r.ell = ell;
  r.d = rep.d;
  r.s = rep.s;
  r.n_max = n_max;
  r.phi_start = phi_start;
  r.phi_well_defined = true;
  r.stability_basis = "<sigma, tau>";

  std::map<Lattice, size_t> index;
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& kernel : stable_submodules(rep, n)) {
      const Lattice node = quotient_lattice(kernel, n, big);
      const i64 phi = lemma43_transfer(rep, kernel, phi_start, n).phi_ell;
      auto it = index.find(node);
      if (it == index.end()) {
        index.emplace(node, r.nodes.size());
        r.nodes.push_back(IsogenyNode{node, kernel, n, phi, sigma_trivial_first_layer(rep, node), false});
      } else if (r.nodes[it->second].phi_ell != phi) {
        r.phi_well_defined = false;
      }
    }
  }
  std::sort(r.nodes.begin(), r.nodes.end(), [](const IsogenyNode& a, const IsogenyNode& b) { return a.lattice < b.lattice; });
  r.max_phi = 0;
  for (const auto& nd : r.nodes) r.max_phi = std::max(r.max_phi, nd.phi_ell);
  r.maximal_sigma_trivial = true;
  r.nonmaximal_sigma_nontrivial = true;
  const Lattice full = Lattice::full(big, 2 * rep.d);
  for (auto& nd : r.nodes) {
    nd.maximal = nd.phi_ell == r.max_phi;
    if (nd.maximal) {
      ++r.maximal_count;
      r.maximal_sigma_trivial = r.maximal_sigma_trivial && nd.sigma_trivial_first_layer;
    } else {
      r.nonmaximal_sigma_nontrivial = r.nonmaximal_sigma_nontrivial && !nd.sigma_trivial_first_layer;
    }
    if (nd.lattice == full) r.start_is_maximal = nd.maximal;
  }
  return r;
}

Prop412Check check_prop412(const GaloisRep& rep) {
  const FiltrationData f = filtration(rep, rep.ctx.precision());
  Prop412Check c{};
  c.intersection_trivial = padic::intersect(f.m2, f.tau_m2).is_zero();
  const auto s = padic::sum(f.m2, f.tau_m2);
  c.sum_is_full = s.lattice == Lattice::full(rep.ctx, 2 * rep.d);
  c.holds = c.intersection_trivial && c.sum_is_full && s.is_direct;
  return c;
}

}  // namespace sslab::galois
