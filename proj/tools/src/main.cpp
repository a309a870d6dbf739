#include <iostream>

#include "kola/cli/app.hpp"

int main(int argc, char** argv) { return kola::cli::run(argc, argv, std::cout, std::cerr); }
