#include "xpsram/cli.hpp"

int main(int argc, char** argv) { return xpsram::cli::run(argc, argv); }
