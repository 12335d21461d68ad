#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../../src/cli/cli_core.hpp"

using dcsb::cli::RunConfig;
namespace fs = std::filesystem;

namespace {
std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "dcsb");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return dcsb::cli::run_cli(int(argv.size()), argv.data());
}
} // namespace

TEST_CASE("format_sci is fixed-width scientific with 17 significant digits") {
    CHECK(dcsb::cli::format_sci(1.0) == "1.0000000000000000e+00");
    CHECK(dcsb::cli::format_sci(-0.5) == "-5.0000000000000000e-01");
    CHECK(dcsb::cli::format_sci(0.0) == "0.0000000000000000e+00");
}

TEST_CASE("apply_key_value validates keys and values") {
    RunConfig cfg;
    dcsb::cli::apply_key_value(cfg, "gamma", "0.25", "test");
    CHECK(cfg.params.gamma == 0.25);
    dcsb::cli::apply_key_value(cfg, "model", "nn", "test");
    CHECK(cfg.kernel.variant == dcsb::Variant::nn);
    dcsb::cli::apply_key_value(cfg, "gamma_range", "0.1:0.4:7", "test");
    CHECK(cfg.sweep.present);
    CHECK(cfg.sweep.count == 7);
    CHECK_THROWS_AS(dcsb::cli::apply_key_value(cfg, "gamma", "abc", "test"),
                    dcsb::ConfigError);
    CHECK_THROWS_AS(dcsb::cli::apply_key_value(cfg, "gamma", "-1", "test"),
                    dcsb::ConfigError);
    CHECK_THROWS_AS(dcsb::cli::apply_key_value(cfg, "bogus", "1", "test"),
                    dcsb::ConfigError);
    CHECK_THROWS_AS(dcsb::cli::apply_key_value(cfg, "model", "xy", "test"),
                    dcsb::ConfigError);
}

TEST_CASE("config file parsing and flag precedence") {
    const std::string path = tmp_path("dcsb_cfg_test.cfg");
    {
        std::ofstream os(path);
        os << "# comment\n"
           << "gamma = 0.2\n"
           << "zeta = 0.1   # inline comment\n"
           << "n_points = 5\n";
    }
    RunConfig cfg;
    dcsb::cli::apply_config_file(cfg, path);
    CHECK(cfg.params.gamma == 0.2);
    CHECK(cfg.params.zeta == 0.1);
    CHECK(cfg.grid.n_points == 5);
    // a later flag assignment overrides the file
    dcsb::cli::apply_key_value(cfg, "gamma", "0.3", "flag --gamma");
    CHECK(cfg.params.gamma == 0.3);

    CHECK_THROWS_AS(dcsb::cli::apply_config_file(cfg, tmp_path("nope.cfg")),
                    dcsb::ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("cmd_poles free limit writes two half-residue rows") {
    RunConfig cfg;
    cfg.out_path = tmp_path("dcsb_free_poles.csv");
    CHECK(dcsb::cli::cmd_poles(cfg) == 0);
    const std::string csv = slurp(cfg.out_path);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "re_per_ps,im_per_ps,residue_re,residue_im,tau_ps,freq_per_ps");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(line.find("5.0000000000000") != std::string::npos); // residue 0.5
        CHECK(line.find("inf") != std::string::npos);             // undamped
    }
    CHECK(rows == 2);
    CHECK(fs::exists(cfg.out_path + ".meta.json"));
    std::remove(cfg.out_path.c_str());
    std::remove((cfg.out_path + ".meta.json").c_str());
}

TEST_CASE("run_cli exit codes") {
    CHECK(run({"poles", "--gamma", "oops"}) == 2);
    CHECK(run({"poles", "--bad-flag", "1"}) == 2);
    CHECK(run({"sweep", "--out", tmp_path("dcsb_sweep_norange.csv")}) == 2);
    const std::string out = tmp_path("dcsb_cli_sim.csv");
    CHECK(run({"simulate", "--gamma", "0.1", "--zeta", "0.1", "--t-max", "20",
               "--n-points", "21", "--out", out}) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.substr(0, 15) == "t_ps,sigma_z\n0.");
    CHECK(csv.find("\r") == std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".meta.json").c_str());
}

TEST_CASE("cmd_compare emits one column per model") {
    RunConfig cfg;
    cfg.params.gamma = 0.1;
    cfg.params.zeta = 0.1;
    cfg.grid.t_max = 10.0;
    cfg.grid.n_points = 11;
    cfg.models = {"dc", "sb", "nn"};
    cfg.out_path = tmp_path("dcsb_cmp.csv");
    CHECK(dcsb::cli::cmd_compare(cfg) == 0);
    const std::string csv = slurp(cfg.out_path);
    CHECK(csv.substr(0, csv.find('\n')) == "t_ps,dc,sb,nn");
    std::remove(cfg.out_path.c_str());
    std::remove((cfg.out_path + ".meta.json").c_str());
}
