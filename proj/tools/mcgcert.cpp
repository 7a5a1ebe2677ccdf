#include "mcg/cli.hpp"

int main(int argc, char** argv) {
  return mcg::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
