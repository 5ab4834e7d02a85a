#include "qh/cli.hpp"

int main(int argc, char** argv) { return qh::run_cli(argc, argv); }
