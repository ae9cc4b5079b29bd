#include <iostream>

#include "vdw/cli.hpp"
#include "vdw_dataset.hpp"

int main(int argc, char** argv) {
  return vdw::cli::run(argc, argv, vdw::embedded_dataset, {std::cout, std::cerr});
}
