// ale-mesh: command-line front end for the evolving-surface mesh solvers.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <alemesh/errors.hpp>

#include "alemesh_cli/commands.hpp"
#include "alemesh_cli/config.hpp"

namespace {

using namespace alemesh;
using namespace alemesh::cli;

struct Options {
    std::vector<std::string> configs;
    std::vector<std::string> sets;
    std::vector<std::string> methods;
    std::string out;
};

Config load_with_overrides(const std::string& path, const std::vector<std::string>& sets) {
    Config config = Config::load(path);
    for (const auto& s : sets) config.set(s);
    return config;
}

RunConfig single_run(const Options& opts, const char* command) {
    if (opts.configs.size() != 1) {
        throw ConfigError(fmt::format("{} takes exactly one --config, got {}", command, opts.configs.size()));
    }
    return RunConfig::from(load_with_overrides(opts.configs.front(), opts.sets));
}

std::vector<RunConfig> compare_runs(const Options& opts) {
    std::vector<RunConfig> runs;
    if (!opts.methods.empty()) {
        if (opts.configs.size() != 1) throw ConfigError("compare: --methods takes exactly one --config");
        for (const auto& m : opts.methods) {
            Config config = load_with_overrides(opts.configs.front(), opts.sets);
            config.set("run.method", m);
            runs.push_back(RunConfig::from(config));
        }
    } else {
        for (const auto& path : opts.configs) runs.push_back(RunConfig::from(load_with_overrides(path, opts.sets)));
    }
    return runs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ALE mesh evolution on level-set surfaces"};
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App* sub, bool many_configs) {
        auto* cfg = sub->add_option("--config", opts.configs, "Config file (section.key = value)")->required();
        if (!many_configs) cfg->expected(1);
        sub->add_option("--set", opts.sets, "Override a config key: key=value");
        sub->add_option("--out", opts.out, "Output directory")->required();
    };
    auto* init = app.add_subcommand("init", "Generate or load a mesh, project it onto the surface, write mesh.obj");
    auto* evolve = app.add_subcommand("evolve", "Evolve the mesh with the configured method");
    auto* relax = app.add_subcommand("relax", "Stationary relaxation (angle force allowed)");
    auto* compare = app.add_subcommand("compare", "Run several configs/methods and merge their quality series");
    add_common(init, false);
    add_common(evolve, false);
    add_common(relax, false);
    add_common(compare, true);
    compare->add_option("--methods", opts.methods, "Run one config once per method")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*init) cmd_init(single_run(opts, "init"), opts.out, std::cout);
        if (*evolve) cmd_evolve(single_run(opts, "evolve"), opts.out, std::cout);
        if (*relax) cmd_relax(single_run(opts, "relax"), opts.out, std::cout);
        if (*compare) cmd_compare(compare_runs(opts), opts.out, std::cout);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    } catch (const MeshError& e) {
        fmt::print(stderr, "mesh error: {}\n", e.what());
        return kExitConfig;
    } catch (const NumericalError& e) {
        fmt::print(stderr, "numerical failure: {}\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    }
    return kExitOk;
}
