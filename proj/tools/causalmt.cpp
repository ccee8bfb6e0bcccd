#include "causalmt/cli.hpp"

int main(int argc, char** argv) {
  return causalmt::cli_dispatch({argv + 1, argv + argc});
}
