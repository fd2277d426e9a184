#include "defexp/cli.hpp"

int main(int argc, char** argv) { return defexp::cli::run(argc, argv); }
