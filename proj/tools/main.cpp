#include "grquiver/cli.hpp"

int main(int argc, char** argv) { return grq::cli::run(argc, argv); }
