#include "whml/cli.hpp"

int main(int argc, char** argv) { return whml::cli_main(argc, argv); }
