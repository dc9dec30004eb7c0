#include "nls/runner.hpp"

int main(int argc, char** argv) {
    return nls::run(argc, argv);
}
