#include "ihc/cli.hpp"

int main(int argc, char** argv) { return ihc::cli::run(argc, argv); }
