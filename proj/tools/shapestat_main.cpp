#include "shapestat/cli.hpp"

int main(int argc, char** argv) { return shapestat::run_cli(argc, argv); }
