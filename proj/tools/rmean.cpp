#include "robustmean/cli.hpp"

int main(int argc, char** argv) { return robustmean::run_cli(argc, argv); }
