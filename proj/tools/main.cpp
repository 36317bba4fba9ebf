#include <iostream>
#include <string>
#include <vector>

#include "minihyper/cli.hpp"

int main(int argc, char** argv) {
  return minihyper::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
