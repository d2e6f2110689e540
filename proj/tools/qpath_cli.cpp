// Command-line front end.  Subcommands:
//   verify    run the per-k verification suites
//   measure   print the orthonormalizing measure coefficients
//   kernel    print the discrete evolution kernel coefficients
//   converge  convergence sweep over a list of slice counts
//   report    continuum coefficient comparison tables

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpath/cli.hpp"

namespace {

// Lets `--u -q` style arguments through by folding symbolic coupling values
// that start with a dash into `--u=-q` before CLI11 sees them.
std::vector<std::string> fold_dashed_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string current = argv[i];
    if ((current == "--u" || current == "--v") && i + 1 < argc) {
      const std::string value = argv[i + 1];
      if (!value.empty() && value[0] == '-') {
        args.push_back(current + "=" + value);
        ++i;
        continue;
      }
    }
    args.push_back(current);
  }
  return args;
}

void attach_options(CLI::App* cmd, qpath::RunConfig& cfg) {
  cmd->add_option("--k", cfg.k, "root index k (q^(k+1) = -1), k >= 1");
  cmd->add_option("--variant", cfg.variant, "variable algebra: commuting | qcommuting");
  cmd->add_option("--u", cfg.u, "coupling u: re[,im] or q, -q, q^2, -q^2, 1-2q");
  cmd->add_option("--v", cfg.v, "coupling v: re[,im] or q, -q, q^2, -q^2, 1-2q");
  cmd->add_option("--omega", cfg.omega, "frequency");
  cmd->add_option("--time", cfg.time, "total evolution time T");
  cmd->add_option("--slices", cfg.slices, "slice counts K (comma separated)")
      ->delimiter(',');
  cmd->add_option("--tol", cfg.tol, "residual tolerance for verify");
  cmd->add_option("--format", cfg.format, "output format: csv | json");
  cmd->add_option("--output", cfg.output, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-oscillator Bargmann-Fock path integral toolkit"};
  app.name("qpath");
  app.require_subcommand(1);

  qpath::RunConfig cfg;
  const std::pair<const char*, const char*> commands[] = {
      {"verify", "run the verification suites for one k and variant"},
      {"measure", "print the orthonormalizing measure coefficients"},
      {"kernel", "print the discrete evolution kernel coefficients"},
      {"converge", "sweep slice counts and report convergence"},
      {"report", "print the continuum coefficient comparison tables"},
  };
  for (const auto& [name, blurb] : commands) {
    attach_options(app.add_subcommand(name, blurb), cfg);
  }

  std::vector<std::string> args = fold_dashed_values(argc, argv);
  std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return qpath::run_command(cfg, std::cout, std::cerr);
}
