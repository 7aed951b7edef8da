#include "diaglat/cli.hpp"

int main(int argc, char** argv) { return diaglat::cli::run(argc, argv); }
