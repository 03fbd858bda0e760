#include "regfm/driver.hpp"

int main(int argc, char** argv) { return regfm::cli_main(argc, argv); }
