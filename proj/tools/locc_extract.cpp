#include <iostream>

#include "locc/cli.hpp"

int main(int argc, char **argv) { return locc::cmd_dispatch(argc, argv, std::cout, std::cerr); }
