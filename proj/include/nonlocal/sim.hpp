// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/fem1d.hpp"
#include "nonlocal/fem2d.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/params.hpp"

namespace nonlocal {

enum class ModelKind { single, two };
enum class SchemeKind { fd, fv, fem };
enum class AdvectionTreatment { semi_implicit, explicit_transport };
enum class InitialCondition { perturbed_constant, gaussian_sum };

/// Everything a run needs. Parsed from `key = value` text; see README for the
/// key list. Keys that do not apply to the chosen model are rejected.
struct SimConfig {
    ModelKind model = ModelKind::single;
    int dim = 1;
    SchemeKind scheme = SchemeKind::fem;
    AdvectionTreatment advection = AdvectionTreatment::semi_implicit;
    FemAdvectionWeights fem_weights = FemAdvectionWeights::conservative;
    KernelMethod kernel_method = KernelMethod::fft;
    /// Unset means unit for one population and ball for two (2D only).
    std::optional<KernelWeight> kernel_weight;
    DiagonalSplit split = DiagonalSplit::uniform;

    InitialCondition ic = InitialCondition::perturbed_constant;
    double ic_base = 1.0;
    double ic_amplitude = 0.01;

    double D = 1.0;
    double alpha = 10.0;
    double Su = 25.0;
    double Sv = 7.5;
    double C = 0.0;
    double r = 1.0;
    double L = 10.0;
    std::size_t N = 1000;
    double tau = 0.01;
    double t_end = 10.0;
    std::uint64_t seed = 0;
    double solver_tol = 1e-10;

    std::vector<double> snapshot_times;
    /// A diagnostics row every this many steps (plus every snapshot and the last step).
    std::size_t diagnostics_stride = 1;
    /// Oscillation flags in compare_schemes ignore steps with t below this.
    /// Unset means 0.1 for random initial data (its noise zigzags) and 0 otherwise.
    std::optional<double> oscillation_warmup;
    std::filesystem::path output = ".";

    /// Throws ConfigError naming the offending key(s).
    static SimConfig parse(std::string_view text);
    static SimConfig load(const std::filesystem::path& path);
    /// Compatibility matrix and parameter ranges. parse() already calls this.
    void validate() const;

    KernelWeight effective_kernel_weight() const;
    double effective_oscillation_warmup() const;
    ModelParams model_params() const;
    TwoPopParams twopop_params() const;
    /// Number of steps to t_end, and the step index of a requested time.
    std::size_t total_steps() const;
    std::size_t step_of(double t) const;
};

struct DiagnosticsRow {
    double time = 0.0;
    double mass[2] = {0.0, 0.0};
    double min[2] = {0.0, 0.0};
    double max[2] = {0.0, 0.0};
    bool oscillatory = false;
    /// Cosine similarity of u and v; NaN for one population.
    double similarity = 0.0;
};

struct RunResult {
    std::vector<std::filesystem::path> snapshots;
    std::filesystem::path diagnostics;
    std::vector<DiagnosticsRow> rows;
};

/// Runs the configured simulation, writing `snap_t<t>.csv` files and
/// `diagnostics.csv` into config.output. A SolverError propagates after the
/// diagnostics gathered so far have been written. Progress goes to `log` if given.
RunResult run(const SimConfig& config, std::ostream* log = nullptr);

/// Snapshot file name for time t: "snap_t" + printf("%.6g", t) + ".csv".
std::string snapshot_name(double t);

/// Runs each 1D single-population scheme ("fd", "fv", "fem", "fem_explicit")
/// from the same initial data and writes `comparison.csv` with, for every
/// snapshot time and scheme pair, the relative L2 and Linf distances and a
/// sticky oscillation flag per scheme. Returns the report path.
std::filesystem::path compare_schemes(const SimConfig& config, const std::vector<std::string>& schemes,
                                      std::ostream* log = nullptr);

}  // namespace nonlocal
