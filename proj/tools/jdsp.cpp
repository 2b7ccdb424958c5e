#include <string>
#include <vector>

#include "jdsp/service.hpp"

int main(int argc, char** argv) { return jdsp::cli_main(std::vector<std::string>(argv, argv + argc)); }
