#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sslab/report.hpp"

namespace sslab::cli {

// Runs one subcommand; `args` excludes the program name. Writes the JSON report to `out` and
// usage or error text to `err`. Returns 0 when every check passes, 1 when a check fails and 2
// on usage or precondition errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Report builders behind the subcommands.
report::Report ns_enumerate_report(i64 bound);
report::Report miyawaki_search_report(i64 ell, i64 bound, i64 box_radius);
report::Report dagger_report(const std::vector<std::pair<i64, i64>>& pairs);
report::Report verify_identities_report(const std::vector<i64>& ells, const std::vector<i64>& s_multipliers,
                                        const std::vector<int>& precisions, const std::vector<int>& dims,
                                        std::optional<i64> explicit_s);
report::Report isogeny_maximal_report(i64 ell, i64 s, int n);
report::Report class_number_report(i64 disc);
report::Report controlled_degree_report(i64 p);
report::Report gamma_rank_report(i64 ell, i64 p, i64 box_cap);
report::Report ramification_report(const std::vector<i64>& orders, i64 ell);
report::Report curve_info_report(const std::string& curve, const std::vector<i64>& primes);
report::Report genus2_disc_report(const std::vector<std::string>& p_coeffs, const std::vector<std::string>& q_coeffs);
report::Report paper_suite_report();

}  // namespace sslab::cli
