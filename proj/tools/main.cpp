#include <iostream>

#include "hstiefel/cli.hpp"

int main(int argc, char** argv) {
  return hstiefel::run(argc, argv, std::cout, std::cerr);
}
