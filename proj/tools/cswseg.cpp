#include <iostream>

#include "cswseg/cli.hpp"

int main(int argc, char** argv)
{
  return cswseg::run_cli(argc, argv, std::cout, std::cerr);
}
