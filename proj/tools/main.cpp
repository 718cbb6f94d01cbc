#include "smoothfem/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv)
{
    CLI::App app{"Batch driver for smooth finite element experiments"};

    sfem::ExperimentConfig config;
    std::string rvec_arg;

    app.add_option("--experiment", config.experiment,
                   "interpolate|polyharmonic|dimcheck|selftest")
        ->required();
    app.add_option("--dim", config.dim, "ambient dimension (1|2|3)");
    app.add_option("--degree", config.degree, "polynomial degree K");
    app.add_option("--smoothness", config.smoothness,
                   "target smoothness M (minimal admissible r is derived)");
    app.add_option("--rvec", rvec_arg, "explicit smoothness vector r0,r1,...,rd");
    app.add_option("--mesh", config.mesh, "builtin:square:N | builtin:cube:N | file:PATH");
    app.add_option("--levels", config.levels, "number of uniform refinement levels");
    app.add_option("--exact", config.exact,
                   "exact solution name (sincos45|sin2pi2d|bih2d|sin2pi3d|sin5xyz3d)");
    app.add_option("--output", config.output, "output path (default: stdout)");
    app.add_option("--format", config.format, "csv|json");
    app.add_option("--threads", config.threads, "worker thread count");

    CLI11_PARSE(app, argc, argv);

    if (!rvec_arg.empty()) {
        std::stringstream ss(rvec_arg);
        std::string item;
        while (std::getline(ss, item, ','))
            config.rvec.push_back(std::stoi(item));
    }

    return sfem::run(config, std::cout, std::cerr);
}
