#include "dealias/cli.hpp"

int main(int argc, char** argv) { return dealias::cli_main(argc, argv); }
