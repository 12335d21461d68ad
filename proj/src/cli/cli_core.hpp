// cli_core.hpp — configuration model and command implementations for the
// dcsb command-line tool, separated from main() so tests can drive them.

#pragma once

#include <string>
#include <vector>

#include "dcsb/dynamics.hpp"

namespace dcsb::cli {

struct GridSpec {
    double t_max = 200.0;
    int n_points = 2001;
};

struct SweepSpec {
    bool present = false;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> zeta_list;
};

struct RunConfig {
    PhysParams params;
    KernelConfig kernel;
    GridSpec grid;
    SweepSpec sweep;
    std::vector<std::string> models; // for `compare`
    std::string out_path = "out.csv";
    int jobs = 1;
};

// one `key = value` assignment (from a config file line or a flag);
// throws ConfigError with `where` identifying the source
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value,
                     const std::string& where);

// line-based `key = value` file with '#' comments; unknown keys are errors
void apply_config_file(RunConfig& cfg, const std::string& path);

// scientific notation with 17 significant digits, lowercase 'e'
std::string format_sci(double v);

int cmd_simulate(const RunConfig& cfg);
int cmd_poles(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);

// full argv interface; returns the process exit code
// (0 success, 2 config error, 3 numerical failure)
int run_cli(int argc, char** argv);

} // namespace dcsb::cli
