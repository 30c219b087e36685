#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

#include "opc/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int exit_code_for(opc::ErrorKind kind) {
    switch (kind) {
        case opc::ErrorKind::ConfigError:
        case opc::ErrorKind::InvalidParameter:
            return 2;
        case opc::ErrorKind::InvariantViolation:
            return 4;
        default:
            return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with coherent pairs of moment functionals"};
    std::string command = "run", config_path, format, out_path;
    std::optional<int> depth;
    app.add_option("command", command,
                   "moments|recurrence|solve|fit|sobolev|companion|verify|run (run dispatches on the config case)");
    app.add_option("--config", config_path, "configuration file (JSON)")->required();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--depth", depth, "override n_max")->check(CLI::Range(0, 10000));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!cli::is_command(command))
            throw opc::Error(opc::ErrorKind::ConfigError, "command is known", std::nullopt, command);
        cli::RunConfig config = cli::load_config(config_path);
        if (depth) {
            config.n_max = *depth;
            config.source["n_max"] = *depth;
        }
        if (!format.empty()) config.format = format;
        const cli::Report report = cli::run_command(command, config);
        const std::string text = cli::render(report, config.format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw opc::Error(opc::ErrorKind::ConfigError, "output file is writable", std::nullopt, out_path);
            out << text;
        }
        return report.exit_code;
    } catch (const opc::Error& e) {
        std::cerr << cli::error_record(opc::error_kind_name(e.kind()), e.precondition(), e.index(), e.detail());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << cli::error_record("ConfigError", "configuration is well formed", std::nullopt, e.what());
        return 2;
    }
}
