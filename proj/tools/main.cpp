#include <iostream>

#include <kweave/cli.hpp>

int main(int argc, char** argv) { return kweave::runCli(argc, argv, std::cout, std::cerr); }
