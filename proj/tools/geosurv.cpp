#include <string>
#include <vector>

#include "geosurv/cli.hpp"

int main(int argc, char** argv) {
  return geosurv::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
