#include "sslab/report.hpp"

namespace sslab::report {

namespace {

constexpr i64 kMaxSafe = (i64{1} << 53) - 1;

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::paper: return "paper";
    case Provenance::trivial: return "trivial";
    case Provenance::derived: return "derived";
  }
  return "derived";
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::check(const std::string& name, const json& expected, const json& actual, Provenance prov) {
  checks_.push_back(Check{name, expected, actual, expected == actual, prov});
}

void Report::check_that(const std::string& name, bool pass, const json& expected, const json& actual,
                        Provenance prov) {
  checks_.push_back(Check{name, expected, actual, pass, prov});
}

void Report::absorb(const Report& other, const std::string& prefix, bool paper_only) {
  for (const auto& c : other.checks_) {
    if (paper_only && c.provenance != Provenance::paper) continue;
    Check copy = c;
    copy.name = prefix + c.name;
    checks_.push_back(copy);
  }
}

bool Report::all_pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json checks = json::array();
  int passed = 0;
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"pass", c.pass},
                      {"provenance", to_string(c.provenance)}});
    if (c.pass) ++passed;
  }
  const int total = static_cast<int>(checks_.size());
  return json{{"schema", 1},
              {"command", command_},
              {"inputs", inputs_},
              {"results", results_},
              {"checks", checks},
              {"summary", {{"total", total}, {"passed", passed}, {"failed", total - passed}, {"all_pass", passed == total}}}};
}

json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return integer(static_cast<i64>(z.get_si()));
  return z.get_str();
}

json integer(i64 v) {
  if (v > kMaxSafe || v < -kMaxSafe) return std::to_string(v);
  return v;
}

json rational(const mpq_class& q) { return q.get_str(); }

}  // namespace sslab::report
