// Command-line front end. Reads a document from a file (or stdin with "-"),
// writes the report to stdout and diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "otro/commands.hpp"

namespace {

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orderings of selfadjoint ternary rings of operators"};
  app.require_subcommand(1);

  double tol = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_level = 3;
  std::size_t max_blocks = otro::kMaxBlocks;
  auto* tol_opt = app.add_option("--tol", tol, "Numerical tolerance (overrides the document)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for sampled checks");
  app.add_option("--max-level", max_level, "Highest matrix level for positivity checks")
      ->check(CLI::Range(1, 4));
  app.add_option("--max-blocks", max_blocks, "Cap on central blocks")
      ->check(CLI::Range(std::size_t{0}, otro::kMaxBlocks));

  std::string path;
  std::size_t index_u = 0;
  std::size_t index_v = 0;
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", path, "Input document, or - for stdin")->required();
    return sub;
  };
  auto* classify = add("classify", "Natural and maximal cones, decomposition");
  auto* cones = add("cones", "List the central selfadjoint tripotents");
  auto* meet = add("meet", "Meet of two enumerated tripotents");
  meet->add_option("--u", index_u, "Index of the first tripotent")->required();
  meet->add_option("--v", index_v, "Index of the second tripotent")->required();
  auto* commutative = add("commutative", "Antisymmetric open sets of a finite involutive space");
  auto* checkmap = add("checkmap", "Selfadjointness, ternary and complete positivity of a map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string input;
  if (!read_input(path, input)) {
    std::cerr << "cannot read '" << path << "'\n";
    return 2;
  }

  otro::CommandOptions options;
  if (*tol_opt) options.tolerance = tol;
  options.seed = seed;
  options.max_level = max_level;
  options.max_blocks = max_blocks;

  otro::Report report;
  if (*classify) report = otro::cmd_classify(input, options);
  else if (*cones) report = otro::cmd_cones(input, options);
  else if (*meet) report = otro::cmd_meet(input, index_u, index_v, options);
  else if (*commutative) report = otro::cmd_commutative(input, options);
  else if (*checkmap) report = otro::cmd_checkmap(input, options);

  std::cout << report.text;
  std::cerr << report.diagnostic;
  return report.exit_code;
}
