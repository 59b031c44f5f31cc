#include "koz/cli.hpp"

int main(int argc, char** argv) { return koz::cli_main(argc, argv); }
