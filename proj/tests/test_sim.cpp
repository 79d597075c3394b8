// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/sim.hpp"

using namespace nonlocal;
namespace fs = std::filesystem;

namespace {
fs::path fresh_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("nonlocal_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string error_of(const std::string& text) {
    try {
        SimConfig::parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

const char* small_run = R"(# small single-population run
model = single
dim = 1
scheme = fem
alpha = 10
L = 5
N = 200
tau = 0.01
t_end = 0.5
seed = 3
snapshot_times = 0, 0.25, 0.5
diagnostics_stride = 5
)";
}  // namespace

TEST_CASE("parser accepts comments, arrays and spacing") {
    const auto c = SimConfig::parse(small_run);
    CHECK(c.N == 200);
    CHECK(c.snapshot_times == std::vector<double>{0.0, 0.25, 0.5});
    CHECK(c.total_steps() == 50);
    CHECK(c.step_of(0.25) == 25);
    CHECK(c.effective_oscillation_warmup() == doctest::Approx(0.1));
    CHECK(SimConfig::parse("model = two\ndim = 2\nL = 2.5\nN = 16\nt_end = 0.1").effective_kernel_weight() ==
          KernelWeight::ball);
}

TEST_CASE("parser errors name the key") {
    CHECK(error_of("bogus = 1").find("bogus") != std::string::npos);
    CHECK(error_of("N = ten").find("N") != std::string::npos);
    CHECK(error_of("tau = 0.01\ntau = 0.02").find("tau") != std::string::npos);
    CHECK(error_of("alpha").find("alpha") != std::string::npos);
    CHECK(error_of("model = two\nalpha = 3").find("alpha") != std::string::npos);
    CHECK(error_of("scheme = fv\ndim = 2\nL = 2.5\nN = 16").find("scheme") != std::string::npos);
    CHECK(error_of("kernel_method = direct").find("kernel_method") != std::string::npos);
    CHECK(error_of("t_end = 1.005").find("t_end") != std::string::npos);
    CHECK(error_of("snapshot_times = 0.5, 0.25").find("snapshot_times") != std::string::npos);
    CHECK(error_of("D = -1").find("D") != std::string::npos);
    CHECK_THROWS_AS(SimConfig::load("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("run writes snapshots and diagnostics, deterministically") {
    auto c = SimConfig::parse(small_run);
    c.output = fresh_dir("run_a");
    const auto res = run(c);
    CHECK(res.snapshots.size() == 3);
    CHECK(snapshot_name(0.25) == "snap_t0.25.csv");
    CHECK(snapshot_name(10) == "snap_t10.csv");
    CHECK(fs::exists(c.output / "snap_t0.25.csv"));

    std::ifstream snap(c.output / "snap_t0.5.csv");
    std::string line;
    std::getline(snap, line);
    CHECK(line == "x,u");
    double sum = 0.0;
    std::size_t rows = 0;
    while (std::getline(snap, line)) {
        sum += std::stod(line.substr(line.find(',') + 1));
        ++rows;
    }
    CHECK(rows == 200);
    CHECK(res.rows.back().time == doctest::Approx(0.5));
    CHECK(sum * 0.05 == doctest::Approx(res.rows.back().mass[0]).epsilon(1e-9));
    CHECK(res.rows.back().mass[0] == doctest::Approx(res.rows.front().mass[0]).epsilon(1e-12));

    auto c2 = c;
    c2.output = fresh_dir("run_b");
    run(c2);
    for (const char* f : {"snap_t0.csv", "snap_t0.25.csv", "snap_t0.5.csv", "diagnostics.csv"})
        CHECK(slurp(c.output / f) == slurp(c2.output / f));
    fs::remove_all(c.output);
    fs::remove_all(c2.output);
}

TEST_CASE("two-population 2D snapshot layout") {
    auto c = SimConfig::parse("model = two\ndim = 2\nL = 2.5\nN = 8\ntau = 0.01\nt_end = 0.02\nic_base = 0.1\n"
                              "snapshot_times = 0.02\nC = 5\n");
    c.output = fresh_dir("run_2d");
    const auto res = run(c);
    std::ifstream snap(c.output / "snap_t0.02.csv");
    std::string line;
    std::getline(snap, line);
    CHECK(line == "x,y,u,v");
    std::getline(snap, line);
    std::getline(snap, line);
    // Second row advances x first.
    CHECK(line.rfind("-1.875,-2.5,", 0) == 0);
    std::getline(std::ifstream(c.output / "diagnostics.csv"), line);
    CHECK(line == "time,mass_u,mass_v,min_u,min_v,max_u,max_v,oscillatory,similarity");
    CHECK(res.rows.back().similarity > 0.9);
    fs::remove_all(c.output);
}

TEST_CASE("scheme comparison: self distance zero") {
    auto c = SimConfig::parse(small_run);
    c.output = fresh_dir("compare");
    const auto report = compare_schemes(c, {"fd", "fem"});
    std::ifstream in(report);
    std::string line;
    std::getline(in, line);
    CHECK(line == "time,scheme_a,scheme_b,rel_l2,rel_linf,oscillatory_a,oscillatory_b");
    bool saw_self = false;
    while (std::getline(in, line)) {
        if (line.find(",fd,fd,") != std::string::npos) {
            saw_self = true;
            CHECK(line.find(",0,0,") != std::string::npos);
        }
    }
    CHECK(saw_self);
    CHECK_THROWS_AS(compare_schemes(c, {"fd", "spectral"}), ConfigError);
    fs::remove_all(c.output);
}
