#include <exception>
#include <iostream>

#include "deit/cli.hpp"

int main(int argc, char** argv) {
  try {
    return deit::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
