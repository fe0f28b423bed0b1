#ifndef POLEXT_CLI_HPP
#define POLEXT_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polext/polynomial.hpp"

namespace polext {

/// Parsed problem file. Exactly one of `ideal_block` and `param_block` is
/// present. Semantic checks (degrees, base points) are left to the commands.
struct ProblemFile {
  struct IdealBlock {
    RingPtr ring;
    std::vector<Polynomial> generators;
    int map_degree = 0;
    std::vector<Polynomial> map_forms;
  };
  struct ParamBlock {
    RingPtr param_ring;
    RingPtr ambient_ring;
    std::vector<Polynomial> forms;
    int selfmap_degree = 0;
    std::vector<Polynomial> selfmap;
  };

  FieldSpec field = FieldSpec::rationals();
  std::optional<IdealBlock> ideal_block;
  std::optional<ParamBlock> param_block;
  // Raw "a:b:c" entries with their line numbers.
  std::vector<std::pair<std::string, std::size_t>> points;
};

// Throws ParseError with the line and column of the first problem.
ProblemFile parse_problem(std::string_view text);

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitConstruction = 3,
  kExitParse = 4,
};

/// Runs the command line `args` (without the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polext

#endif
