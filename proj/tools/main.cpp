#include "eegclass/cli.hpp"

int main(int argc, char** argv) { return eegclass::cli::run(argc, argv); }
