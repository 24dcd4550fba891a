#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sslab::poly {

// Dense integer polynomial, lowest degree first; the zero polynomial is empty.
using ZPoly = std::vector<mpz_class>;

ZPoly trim(ZPoly f);
int degree(const ZPoly& f);  // -1 for zero
const mpz_class& leading(const ZPoly& f);

ZPoly add(const ZPoly& f, const ZPoly& g);
ZPoly sub(const ZPoly& f, const ZPoly& g);
ZPoly mul(const ZPoly& f, const ZPoly& g);
ZPoly scale(const ZPoly& f, const mpz_class& c);
ZPoly derivative(const ZPoly& f);
mpz_class content(const ZPoly& f);
ZPoly primitive_part(const ZPoly& f);

mpz_class evaluate(const ZPoly& f, const mpz_class& x);
mpq_class evaluate(const ZPoly& f, const mpq_class& x);

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f = q g + r.
ZPoly pseudo_remainder(const ZPoly& f, const ZPoly& g);
// Exact division f / g over Z; throws std::domain_error if it is not exact.
ZPoly exact_divide(const ZPoly& f, const ZPoly& g);

// Resultant by the subresultant pseudo-remainder sequence.
mpz_class resultant(const ZPoly& f, const ZPoly& g);
// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
mpz_class discriminant(const ZPoly& f);

// Greatest common divisor over Q, normalised to a primitive polynomial with positive leading
// coefficient.
ZPoly gcd(const ZPoly& f, const ZPoly& g);
ZPoly squarefree_part(const ZPoly& f);

// All rational roots, sorted and without repetition. Uses the monic transform plus Hensel
// lifting of simple roots modulo a small prime, then exact verification.
std::vector<mpq_class> rational_roots(const ZPoly& f);

std::string to_string(const ZPoly& f);

}  // namespace sslab::poly
