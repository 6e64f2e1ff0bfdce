#include "vgsmile/cli.hpp"

int main(int argc, char** argv) {
    return vgsmile::cli::run(argc, argv);
}
