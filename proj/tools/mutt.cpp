#include "mutt/cli.hpp"

int main(int argc, char** argv) { return mutt::run_cli(argc, argv); }
