#ifndef SIGNALGAME_CLI_HPP
#define SIGNALGAME_CLI_HPP

#include <string>
#include <vector>

// The signalgame command-line tool, kept inside the library so tests can
// drive subcommands in-process (the file-access audit in particular needs
// that). Subcommands:
//
//   gen         sample a planted-cover instance, write graph + truth files
//   solve       equilibrium of one subgame (or an explicit matrix game)
//   scheme      build the clique-partition scheme for an instance
//   eval        expected attacker utility of a scheme on a security game
//   recover     extract clusters and recover cliques from graph + scheme
//   experiment  run a preset end to end, write CSV rows + JSON summary
//   validate    statistical validators (bidensity / coverage)
//
// Exit codes: 0 success (and pass, where a check has a target), 2 when a
// check ran cleanly but missed its target, 1 on any error.
namespace signalgame::cli {

// args exclude the program name, e.g. {"gen", "--n", "100", ...}.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace signalgame::cli

#endif  // SIGNALGAME_CLI_HPP
