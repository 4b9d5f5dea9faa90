#include <iostream>

#include "permcert/io.hpp"

int main(int argc, char** argv) {
    return permcert::cli_dispatch(argc, argv, std::cout, std::cerr);
}
