#include "cauchy/experiment.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cauchy {

void RunConfig::validate() const
{
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("degree must be 1 or 2");
    if (!(gamma_v > 0.0) || !(gamma_w > 0.0))
        throw std::invalid_argument("penalty parameters must be positive");
    if (levels.empty())
        throw std::invalid_argument("at least one mesh level is required");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1)
            throw std::invalid_argument("mesh levels must be >= 1");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw std::invalid_argument("mesh levels must be strictly increasing");
    }
    if (!(jitter >= 0.0 && jitter < 0.3))
        throw std::invalid_argument("jitter must lie in [0, 0.3)");
}

RunConfig default_config(int degree)
{
    RunConfig c;
    c.degree = degree;
    c.gamma_v = default_gamma(degree);
    c.gamma_w = default_gamma(degree);
    return c;
}

SingleRun run_single(const RunConfig& config, int n, const CauchyProblem& problem)
{
    SingleRun run;
    run.mesh = std::make_shared<const Mesh>(build_structured(n, config.jitter, config.seed));
    run.v_space.emplace(run.mesh, config.degree, Constraint::Gamma);
    run.w_space.emplace(run.mesh, config.degree, Constraint::GammaPrime);
    const BlockSystem blocks =
        assemble_blocks(*run.v_space, *run.w_space, problem, config.variant, config.gamma_v, config.gamma_w);
    run.solution = solve(build_system(blocks, *run.v_space, *run.w_space));
    run.report = evaluate_errors(*run.v_space, *run.w_space, run.solution, problem, config.variant, config.gamma_v,
                                 config.gamma_w);
    return run;
}

LevelResult run_level(const RunConfig& config, int n, const CauchyProblem& problem)
{
    LevelResult r;
    r.n = n;
    try {
        const SingleRun run = run_single(config, n, problem);
        const ErrorReport& e = run.report;
        for (double v : {e.global_l2, e.local_l2, e.h1_semi, e.stab_u, e.stab_z, e.eta})
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite error quantity");
        if (run.solution.stats.status != SolveStatus::Ok)
            r.error = "relative residual " + format_double(run.solution.stats.relative_residual) +
                      " above tolerance";
        r.report = e;
    } catch (const std::exception& ex) {
        r.report.reset();
        r.error = ex.what();
    }
    return r;
}

ConvergenceTable run_convergence(const RunConfig& config, const CauchyProblem& problem)
{
    config.validate();
    ConvergenceTable table;
    for (int n : config.levels)
        table.rows.push_back(run_level(config, n, problem));
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const auto& prev = table.rows[i - 1].report;
        const auto& cur = table.rows[i].report;
        std::optional<double> local;
        std::optional<double> stab;
        if (prev && cur) {
            const double hs[2] = {prev->h, cur->h};
            const double l[2] = {prev->local_l2, cur->local_l2};
            const double s[2] = {prev->stab_u + prev->stab_z, cur->stab_u + cur->stab_z};
            if (l[0] > 0.0 && l[1] > 0.0)
                local = convergence_rate(l, hs).front();
            if (s[0] > 0.0 && s[1] > 0.0)
                stab = convergence_rate(s, hs).front();
        }
        table.rate_local_l2.push_back(local);
        table.rate_stab.push_back(stab);
    }
    return table;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, int n, std::span<const double> gammas,
                                const CauchyProblem& problem)
{
    if (gammas.empty())
        throw std::invalid_argument("run_sweep: empty gamma list");
    std::vector<SweepRow> rows;
    for (double g : gammas) {
        if (!(g > 0.0))
            throw std::invalid_argument("run_sweep: gammas must be positive");
        RunConfig c = config;
        c.gamma_v = g;
        c.gamma_w = g;
        c.levels = {n};
        c.validate();
        rows.push_back(SweepRow{g, run_level(c, n, problem)});
    }
    return rows;
}

std::vector<double> log_space(double lo, double hi, int count)
{
    if (!(lo > 0.0) || !(hi > 0.0) || count < 1)
        throw std::invalid_argument("log_space: bounds must be positive and count >= 1");
    if (count == 1)
        return {lo};
    std::vector<double> out;
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < count; ++i)
        out.push_back(std::pow(10.0, a + (b - a) * i / (count - 1)));
    return out;
}

std::string format_double(double v)
{
    if (!std::isfinite(v))
        return "NA";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

namespace {

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

void write_report_cells(std::ostream& out, const LevelResult& r)
{
    if (!r.report) {
        out << "NA,NA,NA,NA,NA,NA,NA,NA,NA";
        return;
    }
    const ErrorReport& e = *r.report;
    out << format_double(e.h) << ',' << e.dofs_v << ',' << e.dofs_w << ',' << format_double(e.global_l2) << ','
        << format_double(e.local_l2) << ',' << format_double(e.h1_semi) << ',' << format_double(e.stab_u) << ','
        << format_double(e.stab_z) << ',' << format_double(e.eta);
}

}  // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table)
{
    out << "level,n,h,dofs_V,dofs_W,global_l2,local_l2,h1_semi,stab_u,stab_z,eta,rate_local_l2,rate_stab\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << i << ',' << table.rows[i].n << ',';
        write_report_cells(out, table.rows[i]);
        if (i == 0)
            out << ",NA,NA\n";
        else
            out << ',' << format_optional(table.rate_local_l2[i - 1]) << ','
                << format_optional(table.rate_stab[i - 1]) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << "gamma,n,h,dofs_V,dofs_W,global_l2,local_l2,h1_semi,stab_u,stab_z,eta\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.gamma) << ',' << row.result.n << ',';
        write_report_cells(out, row.result);
        out << '\n';
    }
}

void write_vtk(std::ostream& out, const SingleRun& run, const CauchyProblem& problem)
{
    const FeSpace& v = *run.v_space;
    const Mesh& mesh = v.mesh();
    const auto coords = v.dof_coords();
    const std::size_t nloc = static_cast<std::size_t>(local_dof_count(v.degree()));
    out << "# vtk DataFile Version 3.0\n"
        << "cauchy stabilized FE solution\n"
        << "ASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << coords.size() << " double\n";
    for (const Point2& p : coords)
        out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
    out << "CELLS " << mesh.num_triangles() << ' ' << mesh.num_triangles() * (nloc + 1) << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        out << nloc;
        for (auto d : v.cell_dofs(t))
            out << ' ' << d;
        out << '\n';
    }
    // 5 = VTK_TRIANGLE, 22 = VTK_QUADRATIC_TRIANGLE (same local node order)
    out << "CELL_TYPES " << mesh.num_triangles() << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        out << (v.degree() == 1 ? 5 : 22) << '\n';
    out << "POINT_DATA " << coords.size() << '\n';
    auto scalars = [&](const char* name, auto&& value) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (std::size_t i = 0; i < coords.size(); ++i)
            out << format_double(value(i)) << '\n';
    };
    const auto& sol = run.solution;
    scalars("u_h", [&](std::size_t i) { return sol.u[static_cast<Eigen::Index>(i)]; });
    scalars("z_h", [&](std::size_t i) { return sol.z[static_cast<Eigen::Index>(i)]; });
    scalars("error", [&](std::size_t i) {
        const double exact = problem.exact ? problem.exact->u(coords[i]) : 0.0;
        return exact - sol.u[static_cast<Eigen::Index>(i)];
    });
}

}  // namespace cauchy
