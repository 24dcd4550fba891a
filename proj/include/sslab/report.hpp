#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "sslab/arith.hpp"

namespace sslab::report {

using json = nlohmann::json;

enum class Provenance { paper, trivial, derived };
std::string to_string(Provenance p);

struct Check {
  std::string name;
  json expected;
  json actual;
  bool pass;
  Provenance provenance;
};

// Machine-readable result of one subcommand.
class Report {
 public:
  explicit Report(std::string command);

  const std::string& command() const { return command_; }
  json& inputs() { return inputs_; }
  json& results() { return results_; }
  const std::vector<Check>& checks() const { return checks_; }

  // Passes when expected == actual.
  void check(const std::string& name, const json& expected, const json& actual, Provenance prov);
  // Explicit verdict, for checks that are not plain equalities.
  void check_that(const std::string& name, bool pass, const json& expected, const json& actual, Provenance prov);
  void absorb(const Report& other, const std::string& prefix, bool paper_only);

  bool all_pass() const;
  json to_json() const;

 private:
  std::string command_;
  json inputs_ = json::object();
  json results_ = json::object();
  std::vector<Check> checks_;
};

// Integers beyond 2^53 - 1 in magnitude are emitted as decimal strings.
json integer(const mpz_class& z);
json integer(i64 v);
json rational(const mpq_class& q);

}  // namespace sslab::report
