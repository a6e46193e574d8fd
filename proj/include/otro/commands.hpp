#pragma once

// Command drivers behind the `otro` executable. Each takes the document text
// and returns the report with the process exit code:
//   0  every check passed
//   1  a mathematical check was refuted
//   2  input or usage error (the report text is then a diagnostic)

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "otro/tripotents.hpp"

namespace otro {

struct CommandOptions {
  std::optional<double> tolerance;  ///< overrides the document's tolerance
  std::uint64_t seed = 0;
  std::size_t max_level = 3;
  std::size_t max_blocks = kMaxBlocks;
};

struct Report {
  std::string text;        ///< standard output
  std::string diagnostic;  ///< standard error
  int exit_code = 0;
};

Report cmd_classify(std::string_view input, const CommandOptions& options);
Report cmd_cones(std::string_view input, const CommandOptions& options);
Report cmd_meet(std::string_view input, std::size_t index_u, std::size_t index_v,
                const CommandOptions& options);
Report cmd_commutative(std::string_view input, const CommandOptions& options);
Report cmd_checkmap(std::string_view input, const CommandOptions& options);

}  // namespace otro
