#include "relprec/cli.hpp"

int main(int argc, char** argv) { return relprec::run_cli(argc, argv); }
