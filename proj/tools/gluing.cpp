#include "gluing/scene.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Glue two surfaces along a curve and classify the developables along it"};
    app.require_subcommand(1);

    std::string config;
    gluing::RunOptions options;
    int samples = 0;
    double tol = 0.0;
    std::string out_dir;

    CLI::App* run = app.add_subcommand("run", "Process a scene config and write its outputs");
    run->add_option("config", config, "Scene JSON file")->required();
    auto* samples_opt = run->add_option("--samples", samples, "Sample count along the curve");
    auto* tol_opt = run->add_option("--tol", tol, "Relative zero tolerance");
    auto* out_opt = run->add_option("--out-dir", out_dir, "Directory for output paths");

    CLI11_PARSE(app, argc, argv);

    if (*samples_opt) options.samples = samples;
    if (*tol_opt) options.tolerance = tol;
    if (*out_opt) options.out_dir = out_dir;
    return gluing::run(config, options, std::cerr);
}
