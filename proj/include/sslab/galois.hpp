#pragma once

#include <string>
#include <vector>

#include "sslab/padic.hpp"

namespace sslab::galois {

using padic::Context;
using padic::Lattice;
using padic::Matrix;

// Unit omega with omega^(ell-1) = 1 in Z/ell^N lifting the residue `generator`, by Newton
// iteration on x^(ell-1) - 1. For ell = 2 the lift of the trivial residue is 1; the
// representation uses omega = -1 there (the mod-4 cyclotomic character of complex conjugation).
i64 teichmuller(i64 ell, int precision, i64 generator);

struct GaloisRep {
  Context ctx;
  int d;
  i64 s;
  i64 omega;
  i64 generator;  // residue lifted to omega (2 for ell = 5)
  Matrix sigma;   // d copies of (1 s; 0 1)
  Matrix tau;     // d copies of (0 -omega; 1 1+omega)
};

// ell in {2, 3, 5}, s = 0 mod ell, 1 <= d <= 4, N >= 3.
GaloisRep build_rep(i64 ell, int d, i64 s, int precision);

struct IdentityCheck {
  std::string name;
  bool applicable;
  Matrix lhs;
  Matrix rhs;
  bool pass;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass;  // over applicable checks
};

// (a) sigma tau - tau sigma^-1 = s (ell = 2, 3); (b) sigma tau^2 - tau^2 sigma^-1 = (1+omega) s
// (ell = 5); (c) sigma^tau sigma - sigma sigma^tau = -s^2 omega (1 2(1+omega); 0 -1) blockwise
// (ell = 5), with sigma^tau = tau^-1 sigma tau; (c') the same commutator equals
// s^2 omega^-1 (1 2(1+omega); 0 -1) for every ell.
IdentityReport verify_prop66(const GaloisRep& rep);

struct GroupRingSpan {
  Lattice span;  // in (Z/ell^N)^4, matrices flattened row-major
  int words;     // distinct matrices of word length <= depth
  bool contains_s_matrices;
};

GroupRingSpan group_ring_span(const GaloisRep& rep, int depth);

struct RelationCheck {
  std::string relation;
  bool holds;
};

struct QuotientStructure {
  i64 ell;
  std::string presentation;
  std::string quotient_bound;
  i64 tau_order;  // order of the tau block in GL_2(Z/ell^N)
  std::vector<RelationCheck> relations;
  bool all_hold;
};

QuotientStructure quotient_group_structure(i64 ell);

struct FiltrationData {
  Lattice m2;
  Lattice m1;
  Lattice tau_m2;
};

// Filtration modules reduced to (Z/ell^n)^(2d).
FiltrationData filtration(const GaloisRep& rep, int n);

bool is_stable(const GaloisRep& rep, const Lattice& x);

// All <sigma, tau>-stable submodules of (Z/ell^n)^(2d), sorted. Requires ell^n <= 9 and d <= 2.
std::vector<Lattice> stable_submodules(const GaloisRep& rep, int n);
std::vector<Lattice> stable_submodules_serial(const GaloisRep& rep, int n);

struct TransferResult {
  i64 phi_ell;  // ell-part of the component group of the quotient
  int log_kernel_meet_m2;
  int log_kernel_mod_m1;
  bool kernel_stable;
};

// phi_ell * |kernel meet M2| / |kernel / (kernel meet M1)|; throws std::domain_error when this
// is not an integer.
TransferResult lemma43_transfer(const GaloisRep& rep, const Lattice& kernel, i64 phi_ell, int n);

struct IsogenyNode {
  Lattice lattice;   // normalised Tate module of the quotient, inside (Z/ell^(n_max+1))^(2d)
  Lattice kernel;    // a representative kernel
  int level;         // n for the representative kernel
  i64 phi_ell;
  bool sigma_trivial_first_layer;
  bool maximal;
};

struct MaximalSearchReport {
  i64 ell;
  int d;
  i64 s;
  int n_max;
  i64 phi_start;
  std::vector<IsogenyNode> nodes;
  i64 max_phi;
  int maximal_count;
  bool phi_well_defined;           // every kernel reaching a node gives the same phi
  bool maximal_sigma_trivial;      // sigma acts trivially on the first layer of every maximal node
  bool nonmaximal_sigma_nontrivial;
  bool start_is_maximal;           // the starting variety attains the maximum
  std::string stability_basis;
};

MaximalSearchReport find_ell_maximal(const GaloisRep& rep, i64 phi_start, int n_max);

struct Prop412Check {
  bool intersection_trivial;
  bool sum_is_full;
  bool holds;
};

Prop412Check check_prop412(const GaloisRep& rep);

}  // namespace sslab::galois
