#include "oddhom/cli.hpp"

int main(int argc, char** argv) { return oddhom::run_cli(argc, argv); }
