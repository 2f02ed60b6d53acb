#include <iostream>

#include "liaison/adminctl.hpp"

int main(int argc, char** argv) { return liaison::run_cli(argc, argv, std::cout, std::cerr); }
