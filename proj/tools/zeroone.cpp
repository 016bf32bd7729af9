#include <string>
#include <vector>

#include "zeroone/cli.hpp"

int main(int argc, char** argv) {
  return zeroone::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
