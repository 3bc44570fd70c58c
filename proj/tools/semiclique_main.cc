#include <iostream>
#include <string>
#include <vector>

#include "semiclique/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semiclique::run(args, std::cout, std::cerr);
}
