#include "gdconf/cli/run.hpp"

int main(int argc, char** argv) { return gdconf::cli::run(argc, argv, std::cout, std::cerr); }
