// perturb_state in.json out.json p eps: scales ledger amplitude p by (1 + eps).
#include "sparsens/io.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace sparsens;
    if (argc != 5) {
        std::cerr << "usage: perturb_state in.json out.json p eps\n";
        return 2;
    }
    Json j = read_json_file(argv[1]);
    auto& lam = j.at("ledger").at(std::stoul(argv[3]) - 1).at("lambda");
    lam = to_json(wide_from_json(lam) * WideReal(1 + std::atof(argv[4])));
    write_json_file(argv[2], j);
}
