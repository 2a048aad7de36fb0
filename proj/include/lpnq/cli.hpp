#pragma once

// Command-line front end of the lpnq executable.

#include <iosfwd>
#include <string>
#include <vector>

#include "lpnq/zlinalg.hpp"

namespace lpnq::cli {

  // Exit codes of run().
  inline constexpr int exit_ok          = 0;
  inline constexpr int exit_usage       = 1;
  inline constexpr int exit_computation = 2;
  inline constexpr int exit_mismatch    = 3;

  // Runs one subcommand; args excludes the program name. Reports go to out,
  // diagnostics to err.
  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err);

  // "(Z_p)^k" for an elementary abelian group of rank k > 1, otherwise the
  // divisor chain "Z^r x Z_d1 x Z_d2" or "0".
  std::string render(AbelianInvariants const& a);

}  // namespace lpnq::cli
