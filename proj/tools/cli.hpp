#pragma once

namespace roycrit_cli {

// Parses argv and dispatches to a subcommand. Exit codes: 0 success,
// 2 input/parse error, 3 numeric/solver failure, 4 infeasible parameters.
int run(int argc, char** argv);

}  // namespace roycrit_cli
