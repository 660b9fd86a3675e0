#ifndef CAUCHY_EXPERIMENT_HPP
#define CAUCHY_EXPERIMENT_HPP

#include "cauchy/analysis.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cauchy {

struct RunConfig {
    int degree{1};
    SwVariant variant{SwVariant::Jump};
    double gamma_v{0.01};
    double gamma_w{0.01};
    std::vector<int> levels{8, 16, 32, 64};
    double jitter{0.0};
    unsigned seed{0};
    std::filesystem::path output;
    bool emit_fields{false};

    /// Throws std::invalid_argument on a bad degree, non-positive gammas,
    /// an empty or non-increasing level list, or jitter outside [0, 0.3).
    void validate() const;
};

/// Config with the per-degree default penalty parameters.
RunConfig default_config(int degree);

/// One solve on an n x n mesh. `report` is empty and `error` holds the
/// message when the solve failed.
struct LevelResult {
    int n{0};
    std::optional<ErrorReport> report;
    std::string error;
};

struct ConvergenceTable {
    std::vector<LevelResult> rows;
    /// Rates between consecutive rows; empty when either row failed.
    std::vector<std::optional<double>> rate_local_l2;
    std::vector<std::optional<double>> rate_stab;
};

struct SweepRow {
    double gamma{0.0};
    LevelResult result;
};

struct SingleRun {
    std::shared_ptr<const Mesh> mesh;
    std::optional<FeSpace> v_space;
    std::optional<FeSpace> w_space;
    DiscreteSolution solution;
    ErrorReport report;
};

SingleRun run_single(const RunConfig& config, int n, const CauchyProblem& problem);
LevelResult run_level(const RunConfig& config, int n, const CauchyProblem& problem);

ConvergenceTable run_convergence(const RunConfig& config, const CauchyProblem& problem);
std::vector<SweepRow> run_sweep(const RunConfig& config, int n, std::span<const double> gammas,
                                const CauchyProblem& problem);

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int count);

/// Columns: level,n,h,dofs_V,dofs_W,global_l2,local_l2,h1_semi,stab_u,
/// stab_z,eta,rate_local_l2,rate_stab. Missing values are written as NA.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

/// Columns: gamma,n,h,dofs_V,dofs_W,global_l2,local_l2,h1_semi,stab_u,
/// stab_z,eta.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Legacy-VTK ASCII unstructured grid with point data u_h, z_h and
/// u - u_h at the DOF nodes (quadratic triangles for degree 2).
void write_vtk(std::ostream& out, const SingleRun& run, const CauchyProblem& problem);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace cauchy

#endif  // CAUCHY_EXPERIMENT_HPP
