#include <cstdlib>
#include <iostream>

#include "absorb/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char *s = std::getenv("ABSORB_SIM_SEED"))
    env_seed = s;

  try {
    auto parsed = absorb::cli::parse_args(args, env_seed);
    if (auto *help = std::get_if<absorb::cli::HelpText>(&parsed)) {
      std::cout << help->text;
      return 0;
    }
    return absorb::cli::execute(std::get<absorb::cli::RunPlan>(parsed), std::cerr);
  } catch (const absorb::cli::UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\nrun 'absorb_sim run --help' for the flag table\n";
    return 2;
  }
}
