#include "cohesion/cli.hpp"

int main(int argc, char** argv) { return cohesion::run_cli(argc, argv); }
