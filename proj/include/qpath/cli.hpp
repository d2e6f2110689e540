#pragma once

// Command front end shared by the binary and the tests: a parsed run
// configuration, symbolic coupling tokens, and the command dispatcher.
// Exit codes: 0 success, 1 failed check, 2 configuration error.

#include <ostream>
#include <string>
#include <vector>

#include "qpath/nilalg.hpp"

namespace qpath {

struct RunConfig {
  std::string command;  // verify | measure | kernel | converge | report
  int k = 2;
  std::string variant = "qcommuting";  // commuting | qcommuting
  std::string u = "1";
  std::string v = "0";
  double omega = 1.0;
  double time = 1.0;
  std::vector<int> slices;
  double tol = 1e-10;
  std::string format = "csv";  // csv | json
  std::string output;          // file path; empty = standard output
};

// Couplings accept "re", "re,im", or the symbolic tokens q, -q, q^2, -q^2,
// 1-2q resolved against the configured root.  Throws std::invalid_argument.
cplx parse_complex_token(const std::string& text, const RootData& root);

ExchangeVariant parse_variant(const std::string& text);

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qpath
