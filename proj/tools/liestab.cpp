#include "liestab/cli.hpp"

int main(int argc, char** argv) { return liestab::run_cli(argc, argv); }
