#include "herdsim/cli.hpp"

int main(int argc, char** argv) { return herdsim::cli::run(argc, argv); }
