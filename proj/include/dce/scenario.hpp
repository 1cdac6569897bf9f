#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dce/geometry.hpp"
#include "dce/trajectory.hpp"

namespace dce {

enum class OutputFormat { Csv, Json, Both };

/// One fully validated run description.  Parsing checks every module
/// precondition it can see, including the sampling guard for the requested
/// frequency range, and reports the minimal compliant grid on rejection.
struct ScenarioConfig {
    // geometry
    Geometry geometry = Geometry::interval(1.0);

    // trajectory
    Profile profile = Profile::GaussianDisplacement;
    double T = 20.0;
    std::size_t samples = 0;        // 0 = choose from the guards
    double epsilon = 1e-3;          // HarmonicLength
    double omega1 = 0.0;            // 0 = pi / l0
    double a = 1e-3;                // GaussianDisplacement
    double tau = 1.0;
    double t_center = 0.0;          // 0 = T / 2
    double nu = 1.0;                // SechSquaredBump
    double bump_scale = 1.0;
    std::string csv_path;           // Custom

    // computation
    double omega_max = 0.0;         // 0 = 4.5 pi / l0
    std::size_t K = 0;              // 0 = twice the reported basis
    double omega_cut = 0.0;
    double omega_a_max = 12.0;      // radiate
    double omega_b_max = 12.0;
    std::size_t n_omega = 481;
    double lambda = 0.0;            // statics cutoff, 0 = 400 pi / l0
    double box_length = 0.0;        // statics two-sided box, 0 = one-sided
    unsigned threads = 1;

    // verify
    std::vector<std::string> checks;   // empty = full suite
    std::size_t verify_modes = 6;      // K for the oracle-equivalence check

    // output
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Both;
    int precision = 12;
};

/// Parse and validate.  Accepts either a bare config or a previously written
/// summary (re-ingested through its "config" member).
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config_file(const std::string& path);

/// Trajectory described by the config, with the sample count that satisfies
/// the sampling guard for `omega_query_max`.
Trajectory make_trajectory(const ScenarioConfig& cfg, double omega_query_max);

/// Custom-profile CSV (`t,eta,l` header, uniform grid) with row-numbered
/// diagnostics.
Trajectory load_trajectory_csv(const std::string& path);

nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg);

/// Subcommand drivers.  Each writes its files under cfg.out_dir and logs one
/// line per artifact; run_verify prints one PASS/FAIL line per check and
/// returns nonzero if any check failed.
int run_spectrum(const ScenarioConfig& cfg, std::ostream& log);
int run_radiate(const ScenarioConfig& cfg, std::ostream& log);
int run_statics(const ScenarioConfig& cfg, std::ostream& log);
int run_verify(const ScenarioConfig& cfg, std::ostream& log);

} // namespace dce
