#include "sslab/cli.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sslab/curves.hpp"
#include "sslab/cyclotomic.hpp"
#include "sslab/families.hpp"
#include "sslab/galois.hpp"
#include "sslab/parallel.hpp"
#include "sslab/polynomial.hpp"
#include "sslab/quadratic.hpp"
#include "sslab/ramification.hpp"

namespace sslab::cli {

using report::json;
using report::Provenance;
using report::Report;

namespace {

json curve_json(const curves::WeierstrassCurve& e) {
  return json::array({report::integer(e.a1), report::integer(e.a2), report::integer(e.a3), report::integer(e.a4),
                      report::integer(e.a6)});
}

json matrix_json(const padic::Matrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_rows()) rows.push_back(row);
  return rows;
}

// Basis vectors of a lattice, one entry per generator.
json lattice_json(const padic::Lattice& l) {
  if (l.is_zero()) return json::array();
  return matrix_json(l.basis().transpose());
}

i64 ell_part(i64 n, i64 ell) {
  i64 r = 1;
  while (n % ell == 0) {
    n /= ell;
    r *= ell;
  }
  return r;
}

std::string case_label(i64 ell, i64 s, int n, int d) {
  std::ostringstream os;
  os << "ell=" << ell << " s=" << s << " N=" << n << " d=" << d;
  return os.str();
}

std::vector<std::pair<i64, i64>> default_dagger_pairs() { return {{2, 17}, {2, 73}, {3, 19}, {3, 37}, {5, 11}}; }

std::vector<i64> expected_miyawaki_primes(i64 ell) {
  if (ell == 3) return {19, 37};
  if (ell == 5) return {11};
  return {};
}

poly::ZPoly parse_poly_high_first(const std::vector<std::string>& coeffs) {
  poly::ZPoly p;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    mpz_class c;
    if (c.set_str(*it, 10) != 0) throw std::invalid_argument("bad polynomial coefficient: " + *it);
    p.push_back(c);
  }
  return poly::trim(p);
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

Report ns_enumerate_report(i64 bound) {
  Report r("ns-enumerate");
  r.inputs()["bound"] = bound;
  if (bound < 65) throw std::invalid_argument("ns-enumerate needs --bound >= 65");
  const auto instances = families::ns_enumerate(bound);

  json list = json::array();
  std::vector<i64> primes;
  int mod8 = 0, disc_p = 0, disc_p2 = 0, ordinary = 0;
  for (const auto& inst : instances) {
    const auto inv1 = curves::invariants(inst.curve_delta_p);
    const auto inv2 = curves::invariants(inst.curve_delta_p2);
    const i64 a2 = curves::trace_of_frobenius(inst.curve_delta_p, 2);
    const i64 a2_dual = curves::trace_of_frobenius(inst.curve_delta_p2, 2);
    const bool ord = a2 % 2 != 0 && a2_dual % 2 != 0;
    mod8 += inst.p % 8 == 1;
    disc_p += inv1.disc == inst.p;
    disc_p2 += inv2.disc == mpz_class(-inst.p) * inst.p;
    ordinary += ord;
    primes.push_back(inst.p);
    list.push_back({{"u", inst.u},
                    {"p", inst.p},
                    {"curve_delta_p", curve_json(inst.curve_delta_p)},
                    {"curve_delta_p2", curve_json(inst.curve_delta_p2)},
                    {"disc_delta_p", report::integer(inv1.disc)},
                    {"disc_delta_p2", report::integer(inv2.disc)},
                    {"a2", a2},
                    {"ordinary_at_2", ord}});
  }
  const int count = static_cast<int>(instances.size());
  r.results()["count"] = count;
  r.results()["instances"] = list;
  r.results()["special_primes"] = families::ns_special_primes();

  r.check("every p = 1 mod 8", count, mod8, Provenance::paper);
  r.check("disc of first curve equals p", count, disc_p, Provenance::paper);
  r.check("disc of second curve equals -p^2", count, disc_p2, Provenance::paper);
  r.check("ordinary at 2 (a_2 odd)", count, ordinary, Provenance::paper);
  const auto cong = families::theorem11_congruences(2, primes);
  r.check_that("congruence report for ell = 2", cong.all_pass, true, cong.all_pass, Provenance::paper);
  if (bound >= 200) {
    std::vector<i64> head;
    for (i64 p : primes)
      if (p <= 200) head.push_back(p);
    r.check("primes up to 200", std::vector<i64>{73, 89, 113}, head, Provenance::derived);
  }
  return r;
}

Report miyawaki_search_report(i64 ell, i64 bound, i64 box_radius) {
  Report r("miyawaki-search");
  r.inputs()["ell"] = ell;
  r.inputs()["bound"] = bound;
  r.inputs()["box"] = box_radius;
  const auto hits = families::miyawaki_search(ell, bound, families::SearchBox{box_radius});

  json list = json::array();
  std::set<i64> primes;
  std::set<std::string> found_curves;
  for (const auto& h : hits) {
    list.push_back({{"p", h.p}, {"curve", curve_json(h.curve)}, {"j", report::rational(h.j)}});
    primes.insert(h.p);
    found_curves.insert(h.curve.str());
  }
  r.results()["hits"] = list;
  r.results()["primes"] = std::vector<i64>(primes.begin(), primes.end());

  std::vector<i64> expected;
  for (i64 p : expected_miyawaki_primes(ell))
    if (p <= bound) expected.push_back(p);
  r.check("primes found", expected, std::vector<i64>(primes.begin(), primes.end()), Provenance::paper);

  if (box_radius == families::SearchBox{}.radius) {
    std::set<std::string> recorded;
    for (const auto& h : families::read_search_data(families::default_data_path()))
      if (h.ell == ell && h.p <= bound) recorded.insert(h.curve.str());
    r.check("curves match the regression data file", json(recorded), json(found_curves), Provenance::derived);
  }
  return r;
}

Report dagger_report(const std::vector<std::pair<i64, i64>>& pairs_in) {
  const auto pairs = pairs_in.empty() ? default_dagger_pairs() : pairs_in;
  Report r("dagger");
  json in = json::array();
  for (auto [ell, p] : pairs) in.push_back({{"ell", ell}, {"p", p}});
  r.inputs()["pairs"] = in;

  json out = json::array();
  for (auto [ell, p] : pairs) {
    const auto rep = families::dagger(ell, p);
    const std::string tag = "(" + std::to_string(ell) + "," + std::to_string(p) + ") ";
    json members = json::array();
    for (const auto& m : rep.class_members)
      members.push_back({{"curve", curve_json(m.curve)},
                         {"j", report::rational(m.j)},
                         {"disc_valuation", m.disc_valuation},
                         {"reduction", curves::to_string(m.reduction)},
                         {"depth", m.depth},
                         {"parent", m.parent}});
    const auto& dag = rep.class_members[rep.dagger_index];
    json entry{{"ell", ell},
               {"p", p},
               {"seed_source", rep.seed_source},
               {"class_members", members},
               {"dagger_index", rep.dagger_index},
               {"dagger_curve", curve_json(dag.curve)},
               {"dagger_valuation", rep.dagger_valuation}};
    r.check(tag + "dagger valuation", rep.expected_valuation, rep.dagger_valuation, Provenance::paper);
    r.check_that(tag + "class closed under isogenies has several members", rep.class_members.size() >= 2, ">= 2",
                 rep.class_members.size(), Provenance::derived);
    if (rep.dagger_ordinary_known) {
      entry["dagger_ordinary"] = rep.dagger_ordinary;
      r.check(tag + "dagger ordinary at ell", true, rep.dagger_ordinary, Provenance::paper);
    }
    if (ell == 2) {
      const auto proxy = families::two_division_split_proxy(dag.curve, p);
      entry["split_proxy"] = {{"cubic_disc_valuation", proxy.cubic_disc_valuation},
                              {"roots_mod_p", proxy.roots_mod_p}};
      r.check(tag + "2-division cubic splits at p", true, proxy.holds, Provenance::derived);
    }
    if (ell == 2 || ell == 3) {
      const auto cong = families::theorem11_congruences(ell, {p});
      r.check(tag + "congruence p mod " + std::to_string(cong.modulus), 1, cong.entries.front().residue,
              Provenance::paper);
    }
    out.push_back(entry);
  }
  r.results()["classes"] = out;
  return r;
}

Report verify_identities_report(const std::vector<i64>& ells, const std::vector<i64>& s_multipliers,
                                const std::vector<int>& precisions, const std::vector<int>& dims,
                                std::optional<i64> explicit_s) {
  Report r("verify-identities");
  r.inputs()["ell"] = ells;
  if (explicit_s)
    r.inputs()["s"] = *explicit_s;
  else
    r.inputs()["s_multiples_of_ell"] = s_multipliers;
  r.inputs()["precision"] = precisions;
  r.inputs()["d"] = dims;

  json cases = json::array();
  for (i64 ell : ells) {
    std::vector<i64> svals;
    if (explicit_s)
      svals.push_back(*explicit_s);
    else
      for (i64 k : s_multipliers) svals.push_back(k * ell);
    for (i64 s : svals)
      for (int n : precisions)
        for (int d : dims) {
          const auto rep = galois::build_rep(ell, d, s, n);
          const auto ids = galois::verify_prop66(rep);
          const std::string label = case_label(ell, s, n, d);
          json identities = json::array();
          for (const auto& c : ids.checks) {
            json item{{"name", c.name}, {"applicable", c.applicable}};
            if (c.applicable) {
              item["lhs"] = matrix_json(c.lhs);
              item["rhs"] = matrix_json(c.rhs);
              item["pass"] = c.pass;
              const bool general = c.name.rfind("(c')", 0) == 0;
              r.check(label + " " + c.name, matrix_json(c.rhs), matrix_json(c.lhs),
                      general ? Provenance::derived : Provenance::paper);
            }
            identities.push_back(item);
          }
          json entry{{"ell", ell}, {"s", s}, {"precision", n}, {"d", d}, {"omega", rep.omega},
                     {"omega_generator", rep.generator}, {"identities", identities}};
          if (ell == 5 && d == 1) {
            const auto span = galois::group_ring_span(rep, 4);
            entry["group_ring_span"] = {{"depth", 4}, {"words", span.words}, {"log_order", span.span.log_order()},
                                        {"contains_s_matrices", span.contains_s_matrices}};
            r.check(label + " group ring image contains s M_2", true, span.contains_s_matrices, Provenance::paper);
          }
          cases.push_back(entry);
        }
  }
  r.results()["cases"] = cases;

  json structures = json::array();
  for (i64 ell : ells) {
    const auto q = galois::quotient_group_structure(ell);
    json rels = json::array();
    for (const auto& rel : q.relations) rels.push_back({{"relation", rel.relation}, {"holds", rel.holds}});
    structures.push_back({{"ell", ell},
                          {"presentation", q.presentation},
                          {"quotient_bound", q.quotient_bound},
                          {"tau_order", q.tau_order},
                          {"relations", rels}});
    r.check("ell=" + std::to_string(ell) + " quotient relations hold", true, q.all_hold, Provenance::paper);
  }
  r.results()["quotient_structure"] = structures;
  return r;
}

Report isogeny_maximal_report(i64 ell, i64 s, int n) {
  Report r("isogeny-maximal");
  r.inputs()["ell"] = ell;
  r.inputs()["s"] = s;
  r.inputs()["n"] = n;
  if (s == 0) throw std::invalid_argument("s = 0 describes good reduction; isogeny-maximal needs s != 0");
  if (n < 1) throw std::invalid_argument("--n must be at least 1");
  const int precision = std::max(3, n + 2);
  const i64 phi1 = ell_part(s < 0 ? -s : s, ell);

  for (int d : {1, 2}) {
    const auto rep = galois::build_rep(ell, d, s, precision);
    const i64 phi_start = d == 1 ? phi1 : phi1 * phi1;
    const auto m = galois::find_ell_maximal(rep, phi_start, n);
    json nodes = json::array();
    for (const auto& node : m.nodes)
      nodes.push_back({{"lattice", lattice_json(node.lattice)},
                       {"kernel", lattice_json(node.kernel)},
                       {"level", node.level},
                       {"phi_ell", node.phi_ell},
                       {"sigma_trivial_first_layer", node.sigma_trivial_first_layer},
                       {"maximal", node.maximal}});
    const auto p412 = galois::check_prop412(rep);
    const std::string key = "d" + std::to_string(d);
    r.results()[key] = {{"precision", precision},
                        {"phi_start", phi_start},
                        {"node_count", m.nodes.size()},
                        {"nodes", nodes},
                        {"max_phi", m.max_phi},
                        {"maximal_count", m.maximal_count},
                        {"start_is_maximal", m.start_is_maximal},
                        {"stability_basis", m.stability_basis},
                        {"decomposition", {{"intersection_trivial", p412.intersection_trivial},
                                           {"sum_is_full", p412.sum_is_full}}}};
    const std::string tag = key + " ";
    r.check(tag + "maximal ell-part", phi_start, m.max_phi, Provenance::derived);
    r.check(tag + "component order well defined on nodes", true, m.phi_well_defined, Provenance::derived);
    r.check(tag + "sigma trivial on first layer of maximal nodes", true, m.maximal_sigma_trivial,
            Provenance::paper);
    r.check(tag + "M2 and tau(M2) complementary", true, p412.holds, Provenance::paper);
    if (d == 1) {
      r.check(tag + "unique maximal node", 1, m.maximal_count, Provenance::derived);
      r.check(tag + "sigma nontrivial on non-maximal nodes", true, m.nonmaximal_sigma_nontrivial,
              Provenance::derived);
    } else {
      r.check(tag + "product of maximal varieties is maximal", true, m.start_is_maximal, Provenance::paper);
    }
  }
  return r;
}

Report class_number_report(i64 disc) {
  Report r("class-number");
  r.inputs()["disc"] = disc;
  const auto forms = quadratic::reduced_forms(disc);
  const i64 h = quadratic::class_number(disc);
  json fl = json::array();
  for (const auto& f : forms) fl.push_back({f.a, f.b, f.c});
  r.results()["h"] = h;
  r.results()["fundamental"] = quadratic::is_fundamental_discriminant(disc);
  r.results()["reduced_forms"] = fl;
  r.check("parallel count equals serial count", quadratic::class_number_serial(disc), h, Provenance::derived);
  if (disc == -164) r.check("class number of Q(sqrt(-41))", 8, h, Provenance::paper);
  return r;
}

Report controlled_degree_report(i64 p) {
  Report r("controlled-degree");
  r.inputs()["p"] = p;
  const auto c = quadratic::prop37_report(p);
  r.results() = {{"p", c.p},
                 {"disc", c.disc},
                 {"class_number", c.h},
                 {"two_part", c.n},
                 {"gal_M_over_K_order", c.gal_mk_order},
                 {"degree_over_Q", c.degree_over_q},
                 {"dihedral", c.dihedral}};
  r.check("degree is 4n", 4 * c.n, c.degree_over_q, Provenance::trivial);
  if (p == 41) {
    r.check("class number", 8, c.h, Provenance::paper);
    r.check("degree over Q", 32, c.degree_over_q, Provenance::paper);
  }
  return r;
}

Report gamma_rank_report(i64 ell, i64 p, i64 box_cap) {
  Report r("gamma-rank");
  r.inputs()["ell"] = ell;
  r.inputs()["p"] = p;
  const auto sd = cyclo::splitting(ell, p);
  const auto g = cyclo::unit_image_rank(ell, p, box_cap);
  r.results() = {{"splitting", {{"f", sd.f}, {"g", sd.g}, {"g2", sd.g2}, {"condition_holds", sd.cor410_condition}}},
                 {"gamma_rank", g.gamma_rank},
                 {"unit_image_rank", g.unit_image_rank},
                 {"bound", g.bound},
                 {"method", g.method},
                 {"box_radius", g.box_radius},
                 {"box_size", report::integer(g.box_size)},
                 {"congruent_units", report::integer(g.congruent_units)},
                 {"exact_rank", g.exact_rank},
                 {"stabilized", g.stabilized}};
  r.check_that("0 <= bound <= gamma_rank", 0 <= g.bound && g.bound <= g.gamma_rank, "0 <= bound <= gamma_rank",
               {g.bound, g.gamma_rank}, Provenance::trivial);
  r.check("unit image stabilized", true, g.stabilized, Provenance::derived);
  if (ell == 5 && p == 31) {
    r.check("gamma rank", 4, g.gamma_rank, Provenance::derived);
    r.check("F_5-rank of the quotient", 3, g.bound, Provenance::paper);
  }
  if (ell == 2 && p % 8 == 1) r.check("bound for ell = 2", 2, g.bound, Provenance::derived);
  return r;
}

Report ramification_report(const std::vector<i64>& orders, i64 ell) {
  Report r("ramification");
  r.inputs()["orders"] = orders;
  r.inputs()["ell"] = ell;
  const ram::RamFiltration f(orders);
  json phi = json::array();
  const i64 top = std::max<i64>(f.last_nontrivial() + 1, 1);
  for (i64 i = 0; i <= top; ++i) phi.push_back({{"u", i}, {"phi", ram::herbrand_phi(f, Rational(i)).str()}});
  json jumps = json::array();
  for (const auto& j : ram::upper_jumps(f)) jumps.push_back(j.str());
  r.results() = {{"phi", phi},
                 {"upper_jumps", jumps},
                 {"conductor_exponent", ram::conductor_exponent(f).str()},
                 {"last_nontrivial", f.last_nontrivial()},
                 {"L4", ram::check_L4(f, ell)}};
  r.check("phi(0) = 0", "0", ram::herbrand_phi(f, Rational(0)).str(), Provenance::trivial);
  const bool tame = !f.is_trivial() && f.order(0) == ell - 1 && f.last_nontrivial() == 0;
  if (tame && ell > 2)
    r.check("tame phi(1) = 1/(ell-1)", Rational(1, ell - 1).str(), ram::herbrand_phi(f, Rational(1)).str(),
            Provenance::paper);
  return r;
}

Report curve_info_report(const std::string& text, const std::vector<i64>& primes_in) {
  Report r("curve-info");
  const auto e = curves::WeierstrassCurve::parse(text);
  r.inputs()["curve"] = curve_json(e);
  const auto inv = curves::invariants(e);
  r.results()["invariants"] = {{"b2", report::integer(inv.b2)}, {"b4", report::integer(inv.b4)},
                               {"b6", report::integer(inv.b6)}, {"b8", report::integer(inv.b8)},
                               {"c4", report::integer(inv.c4)}, {"c6", report::integer(inv.c6)},
                               {"disc", report::integer(inv.disc)}, {"j", report::rational(inv.j)}};
  r.check("4 b8 = b2 b6 - b4^2", report::integer(inv.b2 * inv.b6 - inv.b4 * inv.b4),
          report::integer(4 * inv.b8), Provenance::trivial);
  r.check("1728 disc = c4^3 - c6^2", report::integer(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6),
          report::integer(1728 * inv.disc), Provenance::trivial);

  const auto minimal = curves::minimal_model(e);
  const auto minv = curves::invariants(minimal);
  r.results()["minimal_model"] = curve_json(minimal);
  r.results()["minimal_disc"] = report::integer(minv.disc);

  mpz_class rest = abs(minv.disc);
  json local = json::array();
  std::vector<i64> bad;
  for (i64 p = 2; p <= 1'000'000 && rest > 1; ++p) {
    if (!is_prime(static_cast<u64>(p)) || rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    bad.push_back(p);
    const auto ld = curves::local_data(minimal, p);
    local.push_back({{"p", p},
                     {"kind", curves::to_string(ld.kind)},
                     {"disc_valuation", ld.disc_valuation},
                     {"component_order", ld.component_order}});
    if (ld.kind == curves::Reduction::multiplicative)
      r.check("ord_p disc = -ord_p j at " + std::to_string(p), ld.disc_valuation, -curves::ord(minv.j, p),
              Provenance::paper);
  }
  r.results()["bad_primes"] = local;
  r.results()["unfactored_cofactor"] = report::integer(rest);

  std::vector<i64> primes = primes_in;
  if (primes.empty())
    for (i64 p : primes_up_to(13))
      if (minv.disc % p != 0) primes.push_back(p);
  json traces = json::array();
  for (i64 p : primes) {
    const i64 a = curves::trace_of_frobenius(minimal, p);
    traces.push_back({{"p", p}, {"a_p", a}, {"ordinary", a % p != 0}});
    r.check_that("Hasse bound at " + std::to_string(p), a * a <= 4 * p, "a_p^2 <= 4p", a, Provenance::trivial);
  }
  r.results()["traces"] = traces;

  json torsion = json::object();
  for (i64 ell : {2, 3, 5, 7}) {
    const auto t = curves::has_rational_ell_torsion(minimal, ell);
    json entry{{"found", t.found}};
    if (t.witness) entry["witness"] = {t.witness->x.get_str(), t.witness->y.get_str()};
    torsion[std::to_string(ell)] = entry;
  }
  r.results()["rational_torsion"] = torsion;
  return r;
}

Report genus2_disc_report(const std::vector<std::string>& p_coeffs, const std::vector<std::string>& q_coeffs) {
  static const std::vector<std::string> kP{"1", "0", "-2", "2", "-1", "0"};
  static const std::vector<std::string> kQ{"1"};
  const bool defaults = p_coeffs.empty() && q_coeffs.empty();
  const auto& pc = p_coeffs.empty() ? kP : p_coeffs;
  const auto& qc = q_coeffs.empty() ? (p_coeffs.empty() ? kQ : std::vector<std::string>{"0"}) : q_coeffs;
  Report r("genus2-disc");
  r.inputs()["P"] = pc;
  r.inputs()["Q"] = qc;
  const auto P = parse_poly_high_first(pc);
  const auto Q = parse_poly_high_first(qc);
  const auto g = curves::hyperelliptic_odd_disc(P, Q);
  r.results() = {{"disc", report::integer(g.disc)},
                 {"odd_part", report::integer(g.odd_part)},
                 {"two_valuation", g.two_valuation},
                 {"is_277_power", g.is_277_power},
                 {"exponent_277", g.exponent_277}};
  if (defaults) r.check("odd part is a power of 277", true, g.is_277_power, Provenance::paper);
  return r;
}

Report paper_suite_report() {
  Report r("paper-suite");
  std::vector<Report> parts;
  parts.push_back(controlled_degree_report(41));
  parts.push_back(class_number_report(-164));
  parts.push_back(gamma_rank_report(5, 31, 200'000'000));
  parts.push_back(verify_identities_report({2, 3, 5}, {1, 2}, {4, 6}, {1, 2}, std::nullopt));
  parts.push_back(ns_enumerate_report(10'000));
  parts.push_back(dagger_report({}));
  parts.push_back(isogeny_maximal_report(2, 2, 1));
  for (i64 ell : {3, 5, 7}) parts.push_back(miyawaki_search_report(ell, 100, 8));
  parts.push_back(genus2_disc_report({}, {}));
  for (i64 ell = 3; ell <= 19; ell += 2)
    if (is_prime(static_cast<u64>(ell))) parts.push_back(ramification_report({ell - 1}, ell));

  json runs = json::array();
  for (const auto& part : parts) {
    int paper = 0;
    for (const auto& c : part.checks()) paper += c.provenance == Provenance::paper;
    Report tmp = part;
    runs.push_back({{"command", part.command()}, {"inputs", tmp.inputs()}, {"paper_checks", paper}});
    r.absorb(part, part.command() + ": ", true);
  }
  r.results()["runs"] = runs;
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads();
  CLI::App app{"Finite-precision checks for semistable abelian varieties with few bad primes", "semistable_lab"};
  app.require_subcommand(1);
  bool meta = false;
  app.add_flag("--meta", meta, "Append a meta block (timestamp, threads, elapsed time) to the report");

  std::function<Report()> job;

  i64 ns_bound = 10'000;
  auto* ns = app.add_subcommand("ns-enumerate", "Neumann-Setzer primes p = u^2 + 64 and their curves");
  ns->add_option("--bound", ns_bound, "Largest p")->capture_default_str();
  ns->callback([&] { job = [&] { return ns_enumerate_report(ns_bound); }; });

  std::optional<i64> my_ell;
  i64 my_bound = 100, my_box = 8;
  auto* my = app.add_subcommand("miyawaki-search", "Curves with |disc| = p^k and a rational ell-torsion point");
  my->add_option("--ell", my_ell, "3, 5 or 7; all three when omitted");
  my->add_option("--bound", my_bound, "Largest p")->capture_default_str();
  my->add_option("--box", my_box, "Coefficient box radius")->capture_default_str();
  my->callback([&] {
    job = [&] {
      if (my_ell) return miyawaki_search_report(*my_ell, my_bound, my_box);
      Report all("miyawaki-search");
      all.inputs() = {{"ell", {3, 5, 7}}, {"bound", my_bound}, {"box", my_box}};
      for (i64 ell : {3, 5, 7}) {
        auto part = miyawaki_search_report(ell, my_bound, my_box);
        all.results()[std::to_string(ell)] = part.results();
        all.absorb(part, "ell=" + std::to_string(ell) + " ", false);
      }
      return all;
    };
  });

  std::optional<i64> dg_ell, dg_p;
  auto* dg = app.add_subcommand("dagger", "Isogeny class and its member with maximal component group");
  dg->add_option("--ell", dg_ell, "Prime ell; with --p, a single pair");
  dg->add_option("--p", dg_p, "Prime of bad reduction");
  dg->callback([&] {
    if (dg_ell.has_value() != dg_p.has_value()) throw CLI::ValidationError("dagger", "--ell and --p go together");
    job = [&] {
      std::vector<std::pair<i64, i64>> pairs;
      if (dg_ell) pairs.emplace_back(*dg_ell, *dg_p);
      return dagger_report(pairs);
    };
  });

  std::optional<i64> vi_ell, vi_s;
  std::optional<int> vi_n, vi_d;
  auto* vi = app.add_subcommand("verify-identities", "Commutator identities for the inertia representation");
  vi->add_option("--ell", vi_ell, "2, 3 or 5");
  vi->add_option("--s", vi_s, "The sigma parameter, a nonzero multiple of ell");
  vi->add_option("--precision", vi_n, "Work modulo ell^N");
  vi->add_option("--d", vi_d, "Number of elliptic factors");
  vi->callback([&] {
    job = [&] {
      std::vector<i64> ells = vi_ell ? std::vector<i64>{*vi_ell} : std::vector<i64>{2, 3, 5};
      std::vector<int> ns = vi_n ? std::vector<int>{*vi_n} : std::vector<int>{4, 6};
      std::vector<int> ds = vi_d ? std::vector<int>{*vi_d} : std::vector<int>{1, 2};
      return verify_identities_report(ells, {1, 2}, ns, ds, vi_s);
    };
  });

  i64 im_ell = 2, im_s = 2;
  int im_n = 1;
  auto* im = app.add_subcommand("isogeny-maximal", "Stable-submodule graph and ell-maximal nodes");
  im->add_option("--ell", im_ell, "2, 3 or 5")->capture_default_str();
  im->add_option("--s", im_s, "The sigma parameter")->capture_default_str();
  im->add_option("--n", im_n, "Kernel exponent ell^n")->capture_default_str();
  im->callback([&] { job = [&] { return isogeny_maximal_report(im_ell, im_s, im_n); }; });

  i64 cn_disc = -164;
  auto* cn = app.add_subcommand("class-number", "Class number of a negative discriminant");
  cn->add_option("--disc", cn_disc, "Negative discriminant")->capture_default_str();
  cn->callback([&] { job = [&] { return class_number_report(cn_disc); }; });

  i64 cd_p = 41;
  auto* cd = app.add_subcommand("controlled-degree", "Degree of the maximal (2,p)-controlled 2-extension");
  cd->add_option("--p", cd_p, "Odd prime")->capture_default_str();
  cd->callback([&] { job = [&] { return controlled_degree_report(cd_p); }; });

  i64 gr_ell = 5, gr_p = 31, gr_cap = 200'000'000;
  auto* gr = app.add_subcommand("gamma-rank", "Local unit quotient rank and the global unit image");
  gr->add_option("--ell", gr_ell, "Prime ell <= 19")->capture_default_str();
  gr->add_option("--p", gr_p, "Prime p != ell")->capture_default_str();
  gr->add_option("--box-cap", gr_cap, "Largest exponent box scanned before switching to exact generators")
      ->capture_default_str();
  gr->callback([&] { job = [&] { return gamma_rank_report(gr_ell, gr_p, gr_cap); }; });

  std::vector<i64> ra_orders;
  i64 ra_ell = 2;
  auto* ra = app.add_subcommand("ramification", "Herbrand function, upper jumps and conductor of a filtration");
  ra->add_option("orders", ra_orders, "Orders |G_0|,|G_1|,... comma separated")->required()->delimiter(',');
  ra->add_option("--ell", ra_ell, "Residue characteristic")->capture_default_str();
  ra->callback([&] { job = [&] { return ramification_report(ra_orders, ra_ell); }; });

  std::string ci_curve;
  std::vector<i64> ci_primes;
  auto* ci = app.add_subcommand("curve-info", "Invariants, local data, traces and torsion of a curve");
  ci->add_option("curve", ci_curve, "a1,a2,a3,a4,a6")->required();
  ci->add_option("--primes", ci_primes, "Primes for traces of Frobenius")->delimiter(',');
  ci->callback([&] { job = [&] { return curve_info_report(ci_curve, ci_primes); }; });

  std::vector<std::string> g2_p, g2_q;
  auto* g2 = app.add_subcommand("genus2-disc", "Discriminant of 4P + Q^2 for y^2 + Q y = P");
  g2->add_option("--P", g2_p, "Coefficients of P, highest degree first")->delimiter(',');
  g2->add_option("--Q", g2_q, "Coefficients of Q, highest degree first")->delimiter(',');
  g2->callback([&] { job = [&] { return genus2_disc_report(g2_p, g2_q); }; });

  auto* ps = app.add_subcommand("paper-suite", "Every reference check, summarised");
  ps->callback([&] { job = [] { return paper_suite_report(); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, err, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report rep = job();
    json doc = rep.to_json();
    if (meta) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      doc["meta"] = {{"generated_at", iso_timestamp()}, {"threads", max_threads()}, {"elapsed_ms", ms}};
    }
    out << doc.dump(2) << '\n';
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sslab::cli
