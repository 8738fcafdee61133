#include <iostream>

#include "lincond/cli.h"

int main(int argc, char** argv) { return lincond::run(argc, argv, std::cout, std::cerr); }
