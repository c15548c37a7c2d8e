#include <string>
#include <vector>

#include "ednce/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ednce::cli::run(args);
}
