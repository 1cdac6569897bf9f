// Command-line front end: config-driven particle-creation spectra, single
// mirror radiation, static Casimir quantities and the verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numerical-guard failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dce/errors.hpp"
#include "dce/scenario.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format;
    unsigned threads = 0;
    bool seedless = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config JSON (or a written summary)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--format", opts.format, "csv | json | both (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--threads", opts.threads, "worker threads for independent modes");
    cmd->add_flag("--seedless", opts.seedless,
                  "assert the run uses no RNG anywhere (always true; documents determinism)");
}

dce::ScenarioConfig resolve(const CommonOpts& opts) {
    dce::ScenarioConfig cfg = dce::load_config_file(opts.config_path);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (!opts.format.empty())
        cfg.format = opts.format == "csv"    ? dce::OutputFormat::Csv
                     : opts.format == "json" ? dce::OutputFormat::Json
                                             : dce::OutputFormat::Both;
    if (opts.threads != 0) cfg.threads = opts.threads;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacuum particle creation in cavities with moving boundaries"};
    app.require_subcommand(1);

    CommonOpts spectrum_opts, radiate_opts, statics_opts, verify_opts;
    CLI::App* spectrum = app.add_subcommand("spectrum", "per-mode creation spectrum N_a");
    add_common(spectrum, spectrum_opts);
    CLI::App* radiate = app.add_subcommand("radiate", "single-mirror spectral density and energy");
    add_common(radiate, radiate_opts);
    CLI::App* statics = app.add_subcommand("statics", "regularized zero-point energy sector");
    add_common(statics, statics_opts);
    CLI::App* verify = app.add_subcommand("verify", "cross-check suite with exit-code contract");
    add_common(verify, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) return dce::run_spectrum(resolve(spectrum_opts), std::cout);
        if (radiate->parsed()) return dce::run_radiate(resolve(radiate_opts), std::cout);
        if (statics->parsed()) return dce::run_statics(resolve(statics_opts), std::cout);
        if (verify->parsed()) return dce::run_verify(resolve(verify_opts), std::cout);
    } catch (const dce::GuardError& e) {
        std::cerr << "guard failure: " << e.what() << "\n";
        return 3;
    } catch (const dce::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
