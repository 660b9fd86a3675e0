// Experiment driver for the stabilized Cauchy problem solver.
//
//   cauchy_cli convergence --degree 1 --levels 8 16 32 64 --out p1.csv
//   cauchy_cli sweep --n 64 --out sweep.csv
//   cauchy_cli solve --n 8 --emit-fields --fields-out u.vtk

#include "cauchy/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Options {
    int degree{1};
    std::optional<double> gamma_v;
    std::optional<double> gamma_w;
    std::string variant{"jump"};
    std::vector<int> levels{8, 16, 32, 64};
    std::optional<int> n;
    double jitter{0.0};
    unsigned seed{0};
    std::string out;
    bool emit_fields{false};
    std::string fields_out{"solution.vtk"};
    std::vector<double> gammas;
    std::string dump_matrices;
};

cauchy::RunConfig make_config(const Options& o)
{
    cauchy::RunConfig c = cauchy::default_config(o.degree);
    c.variant = cauchy::parse_sw_variant(o.variant);
    if (o.gamma_v)
        c.gamma_v = *o.gamma_v;
    if (o.gamma_w)
        c.gamma_w = *o.gamma_w;
    c.levels = o.levels;
    c.jitter = o.jitter;
    c.seed = o.seed;
    c.output = o.out;
    c.emit_fields = o.emit_fields;
    c.validate();
    return c;
}

template <typename Writer>
void emit(const std::string& path, Writer&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    write(f);
}

int run_convergence(const Options& o)
{
    const auto config = make_config(o);
    const auto table = cauchy::run_convergence(config, cauchy::square_example());
    emit(o.out, [&](std::ostream& s) { cauchy::write_convergence_csv(s, table); });
    if (o.emit_fields) {
        // one file per level: solution.vtk -> solution_n8.vtk, ...
        const std::filesystem::path base(o.fields_out);
        const auto problem = cauchy::square_example();
        for (const auto& row : table.rows) {
            if (!row.report)
                continue;
            const auto run = cauchy::run_single(config, row.n, problem);
            std::filesystem::path path = base;
            path.replace_filename(base.stem().string() + "_n" + std::to_string(row.n) + base.extension().string());
            emit(path.string(), [&](std::ostream& s) { cauchy::write_vtk(s, run, problem); });
        }
    }
    int failures = 0;
    for (const auto& row : table.rows)
        if (!row.error.empty()) {
            std::cerr << "n=" << row.n << ": " << row.error << '\n';
            ++failures;
        }
    return failures == 0 ? 0 : 2;
}

int run_sweep(const Options& o)
{
    const auto config = make_config(o);
    const auto gammas = o.gammas.empty() ? cauchy::log_space(1e-4, 1.0, 9) : o.gammas;
    const auto rows = cauchy::run_sweep(config, o.n.value_or(64), gammas, cauchy::square_example());
    emit(o.out, [&](std::ostream& s) { cauchy::write_sweep_csv(s, rows); });
    int failures = 0;
    for (const auto& row : rows)
        if (!row.result.error.empty()) {
            std::cerr << "gamma=" << row.gamma << ": " << row.result.error << '\n';
            ++failures;
        }
    return failures == 0 ? 0 : 2;
}

int run_solve(const Options& o)
{
    const auto config = make_config(o);
    const int n = o.n.value_or(8);
    const auto problem = cauchy::square_example();
    const auto run = cauchy::run_single(config, n, problem);

    cauchy::ConvergenceTable table;
    table.rows.push_back(cauchy::LevelResult{n, run.report, {}});
    emit(o.out, [&](std::ostream& s) { cauchy::write_convergence_csv(s, table); });
    std::cerr << "relative residual " << cauchy::format_double(run.solution.stats.relative_residual) << '\n';

    if (o.emit_fields)
        emit(o.fields_out, [&](std::ostream& s) { cauchy::write_vtk(s, run, problem); });
    if (!o.dump_matrices.empty()) {
        const std::filesystem::path dir(o.dump_matrices);
        std::filesystem::create_directories(dir);
        const auto blocks = cauchy::assemble_blocks(*run.v_space, *run.w_space, problem, config.variant,
                                                    config.gamma_v, config.gamma_w);
        cauchy::write_matrix_market(dir / "A.mtx", blocks.a);
        cauchy::write_matrix_market(dir / "S_V.mtx", blocks.s_v);
        cauchy::write_matrix_market(dir / "S_W.mtx", blocks.s_w);
        cauchy::write_matrix_market(dir / "saddle.mtx", cauchy::build_system(blocks, *run.v_space, *run.w_space).matrix);
    }
    return run.solution.stats.status == cauchy::SolveStatus::Ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stabilized finite element solver for the elliptic Cauchy problem on the unit square"};
    app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
    app.require_subcommand(1);

    Options o;
    app.add_option("--degree", o.degree, "Polynomial degree (1 or 2)")->check(CLI::IsMember({1, 2}));
    app.add_option("--gamma-v", o.gamma_v, "Penalty parameter of s_V (default 0.01 for P1, 0.001 for P2)");
    app.add_option("--gamma-w", o.gamma_w, "Penalty parameter of s_W (default 0.01 for P1, 0.001 for P2)");
    app.add_option("--sw-variant", o.variant, "Stabilizer of the dual variable")
        ->check(CLI::IsMember({"jump", "galerkin"}));
    app.add_option("--levels", o.levels, "Mesh levels n (n x n cells) for the convergence study")->delimiter(',');
    app.add_option("--n", o.n, "Mesh level for sweep (default 64) and solve (default 8)");
    app.add_option("--jitter", o.jitter, "Interior vertex perturbation in [0, 0.3), relative to 1/n");
    app.add_option("--seed", o.seed, "Seed of the vertex perturbation directions");
    app.add_option("--out", o.out, "CSV output path (stdout when omitted)");
    app.add_flag("--emit-fields", o.emit_fields, "Write u_h, z_h and the nodal error as legacy VTK (solve, convergence)");
    app.add_option("--fields-out", o.fields_out, "VTK output path; convergence appends _n<level> to the stem");
    app.add_option("--gammas", o.gammas, "sweep: penalty values (default 9 log-spaced in [1e-4, 1])")->delimiter(',');
    app.add_option("--dump-matrices", o.dump_matrices, "solve: directory for Matrix Market dumps of the operators");

    auto* conv = app.add_subcommand("convergence", "Refinement study, one CSV row per level");
    auto* sweep = app.add_subcommand("sweep", "Penalty-parameter study on a fixed mesh");
    auto* single = app.add_subcommand("solve", "Single solve with optional field dump");
    for (auto* sub : {conv, sweep, single})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*conv)
            return run_convergence(o);
        if (*sweep)
            return run_sweep(o);
        return run_solve(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
