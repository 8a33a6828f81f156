#include <cstdio>

#include "CLI11.hpp"
#include "lamfrac/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"quasi-static crack propagation in periodic laminates"};
    std::string command, config_path, out_dir = ".";
    unsigned threads = 0;
    app.add_option("--command", command, "solve | release | evolve | homogenize | study")
        ->required();
    app.add_option("--config", config_path, "path to the run configuration")->required();
    app.add_option("--out", out_dir, "output directory (default: .)");
    app.add_option("--threads", threads, "worker threads (default: available parallelism)");
    CLI11_PARSE(app, argc, argv);

    try {
        lamfrac::RunConfig cfg = lamfrac::parse_config(config_path);
        return lamfrac::run_command(command, cfg, out_dir, threads);
    } catch (const lamfrac::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
