#pragma once

/**
 * @file commands.hpp
 * @brief The `tropical` command line front end as callable functions.
 *
 * Exit codes:
 *   0  solved, or verification passed
 *   1  input error (unreadable file, malformed document, bad dimensions)
 *   2  infeasible
 *   3  resource cap (grid too large, values too fine for exact checks)
 *   4  verification ran and a check failed
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "tropical/scalar.hpp"

namespace tropical {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInfeasible = 2,
  kExitResourceCap = 3,
  kExitVerificationFailed = 4,
};

struct CommandOptions {
  bool json = false;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<Rational> step;
  std::optional<Rational> window;
  std::optional<Rational> radius;
  std::optional<std::int64_t> grid_cap;
  /// gen and algebra only.
  std::string semifield = "max-plus";
  /// gen only.
  std::int64_t n = 3;
};

int cmd_solve(const std::string& path, const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_gen(std::string_view kind, const CommandOptions& opt, std::ostream& out, std::ostream& err);
/// subcommand: star, spectral or tr. The matrix file is JSON (array of rows)
/// or plain text rows.
int cmd_algebra(std::string_view subcommand, const std::string& path, const CommandOptions& opt,
                std::ostream& out, std::ostream& err);

}  // namespace tropical
