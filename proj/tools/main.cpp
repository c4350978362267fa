#include "pulsedemod/cli.hpp"

int main(int argc, char** argv) {
    return pulsedemod::cli_main(argc, argv);
}
