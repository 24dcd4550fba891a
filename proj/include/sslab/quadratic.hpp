#pragma once

#include <vector>

#include "sslab/arith.hpp"

namespace sslab::quadratic {

struct QuadForm {
  i64 a, b, c;
  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool operator==(const QuadForm&) const = default;
};

bool is_fundamental_discriminant(i64 d);

// Reduced forms of discriminant d < 0, ordered by (a, b).
std::vector<QuadForm> reduced_forms(i64 d);

// Class number by counting reduced forms; parallel over a with a serial twin for testing.
i64 class_number(i64 d);
i64 class_number_serial(i64 d);

struct ControlledExtensionReport {
  i64 p;
  i64 disc;
  i64 h;
  i64 n;  // 2-part of h
  i64 gal_mk_order;
  i64 degree_over_q;
  bool dihedral;
};

// Degree of the maximal (2,p)-controlled 2-extension of Q for an odd prime p.
ControlledExtensionReport prop37_report(i64 p);

}  // namespace sslab::quadratic
