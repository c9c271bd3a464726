// gn1d: run, verify and inspect Green-Naghdi simulations.
#include "gn1d/cli_app.hpp"
#include "gn1d/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw gn1d::ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gn1d::RunConfig load(const std::string& path, const std::string& scenario)
{
    const std::optional<std::string> flag = scenario.empty() ? std::nullopt : std::optional(scenario);
    return gn1d::parse_config(path.empty() ? std::string() : slurp(path), flag);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"1D Green-Naghdi solver over variable bathymetry"};
    app.require_subcommand(1);

    std::string config_path, scenario;
    std::uint64_t seed = 1;
    bool break_depth = false;

    auto* run = app.add_subcommand("run", "run the configured simulation");
    run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("--scenario", scenario, "scenario, when the config does not name one");

    auto* verify = app.add_subcommand("verify", "run the property suite");
    auto* seed_opt = verify->add_option("--seed", seed, "seed for the random states");
    verify->add_option("--config", config_path, "config file (output_dir, seed)")->check(CLI::ExistingFile);
    verify->add_flag("--break-depth", break_depth, "inject a negative-depth operator (must fail)");

    auto* list = app.add_subcommand("scenarios", "list built-in scenarios");

    auto* dump = app.add_subcommand("dump-config", "print the fully resolved config");
    dump->add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
    dump->add_option("--scenario", scenario, "scenario, when the config does not name one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? gn1d::exit_ok : gn1d::exit_config;
    }

    try {
        if (*list) {
            for (const auto& s : gn1d::scenario_catalog())
                std::printf("%-18s n=%-5d L=%-6g t_end=%-6g %s\n", s.name.c_str(), s.recommended_n,
                            s.recommended_length, s.recommended_t_end, s.description.c_str());
            return gn1d::exit_ok;
        }
        if (*dump) {
            std::cout << gn1d::dump_config(load(config_path, scenario));
            return gn1d::exit_ok;
        }
        if (*verify) {
            gn1d::RunConfig config;
            config.mode = gn1d::RunMode::verify;
            config.output_dir.clear();  // report file only when a config asks for it
            if (!config_path.empty())
                config = load(config_path, scenario);
            if (seed_opt->count() > 0)
                config.seed = seed;
            return gn1d::verify_suite(config, std::cout, break_depth);
        }
        return gn1d::run_config(load(config_path, scenario), std::cout);
    } catch (const gn1d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return gn1d::exit_config;
    } catch (const gn1d::OutputError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return gn1d::exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid setup: " << e.what() << '\n';
        return gn1d::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return gn1d::exit_blowup;
    }
}
