// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Sweep output goes to acceptance_sweep.csv in the working
// directory.
#include "cauchy/experiment.hpp"

#include "support/dense_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace cauchy;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::shared_ptr<const Mesh> square(int n, double jitter = 0.0)
{
    return std::make_shared<const Mesh>(build_structured(n, jitter));
}

Outcome oracle_equivalence()
{
    const auto start = Clock::now();
    const CauchyProblem p = square_example();
    double worst = 0.0;
    for (int n : {1, 2})
        for (int degree : {1, 2})
            for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
                const auto m = square(n);
                const FeSpace v = build_space(m, degree, Constraint::Gamma);
                const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
                const double g = default_gamma(degree);
                const BlockSystem b = assemble_blocks(v, w, p, variant, g, g);
                const auto dense = oracle::make_space(*m, degree);
                const Eigen::MatrixXd sw_ref = variant == SwVariant::Jump
                                                   ? oracle::jump_penalty(dense, oracle::Side::GammaPrime, g)
                                                   : oracle::stiffness(dense, dense);
                worst = std::max({worst, oracle::max_abs_diff(oracle::stiffness(dense, dense), b.a),
                                  oracle::max_abs_diff(oracle::jump_penalty(dense, oracle::Side::Gamma, g), b.s_v),
                                  oracle::max_abs_diff(sw_ref, b.s_w),
                                  (oracle::load(dense, p) - b.load).cwiseAbs().maxCoeff(),
                                  (oracle::data_term(dense, p, g) - b.data).cwiseAbs().maxCoeff()});
            }
    const double t = seconds_since(start);
    return {worst < 1e-12 && t < 5.0, "max entry diff " + fmt(worst) + ", " + fmt(t) + " s"};
}

Outcome discrete_consistency()
{
    const auto start = Clock::now();
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int n : {2, 4, 8})
        for (int degree : {1, 2})
            for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
                const auto m = square(n);
                const FeSpace v = build_space(m, degree, Constraint::Gamma);
                const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
                for (int trial = 0; trial < 3; ++trial) {
                    Vector probe = Vector::Zero(static_cast<Eigen::Index>(v.num_dofs()));
                    for (auto d : v.free_dofs())
                        probe[static_cast<Eigen::Index>(d)] = dist(gen);
                    const double g = default_gamma(degree);
                    worst = std::max(worst, discrete_consistency_probe(v, w, g, g, variant, probe));
                }
            }
    const double t = seconds_since(start);
    return {worst < 1e-9 && t < 10.0, "max probe " + fmt(worst) + ", " + fmt(t) + " s"};
}

struct Studies {
    ConvergenceTable p1;
    ConvergenceTable p2;
    double seconds{0.0};
};

bool complete(const ConvergenceTable& t)
{
    for (const auto& r : t.rows)
        if (!r.report)
            return false;
    return true;
}

std::optional<double> last(const std::vector<std::optional<double>>& v)
{
    return v.empty() ? std::nullopt : v.back();
}

std::string rate_text(const std::optional<double>& r) { return r ? fmt(*r) : "NA"; }

bool within(const std::optional<double>& r, double lo, double hi) { return r && *r >= lo && *r <= hi; }

Outcome stabilization_rate(const Studies& s)
{
    const auto r1 = last(s.p1.rate_stab);
    const auto r2 = last(s.p2.rate_stab);
    const bool ok = complete(s.p1) && complete(s.p2) && within(r1, 0.7, 1.3) && within(r2, 1.6, 2.4) &&
                    s.seconds < 120.0;
    return {ok, "P1 " + rate_text(r1) + " in [0.7,1.3], P2 " + rate_text(r2) + " in [1.6,2.4], " +
                    fmt(s.seconds) + " s"};
}

Outcome local_rate(const Studies& s)
{
    const auto r1 = last(s.p1.rate_local_l2);
    const auto r2 = last(s.p2.rate_local_l2);
    const bool ok = complete(s.p1) && complete(s.p2) && within(r1, 0.7, 1.3) && within(r2, 1.6, 2.4);
    return {ok, "P1 " + rate_text(r1) + " in [0.7,1.3], P2 " + rate_text(r2) + " in [1.6,2.4]"};
}

Outcome global_decrease(const Studies& s)
{
    bool ok = complete(s.p1) && complete(s.p2);
    std::string detail;
    for (const ConvergenceTable* t : {&s.p1, &s.p2}) {
        detail += t == &s.p1 ? "P1" : "; P2";
        for (std::size_t i = 0; ok && i < t->rows.size(); ++i) {
            const double e = t->rows[i].report->global_l2;
            detail += " " + fmt(e);
            if (i > 0 && !(e < t->rows[i - 1].report->global_l2))
                ok = false;
        }
    }
    return {ok, detail};
}

Outcome estimator_decay(const Studies& s)
{
    if (!complete(s.p1) || s.p1.rows.size() < 2)
        return {false, "P1 study incomplete"};
    const auto& a = *s.p1.rows[s.p1.rows.size() - 2].report;
    const auto& b = *s.p1.rows.back().report;
    const double r = convergence_rate(std::vector<double>{a.eta, b.eta}, std::vector<double>{a.h, b.h})[0];
    return {b.eta < a.eta && r >= 0.7, "P1 eta rate " + fmt(r) + " >= 0.7"};
}

Outcome structural_invariants()
{
    const CauchyProblem p = square_example();
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double asym = 0.0;
    double min_quad = std::numeric_limits<double>::infinity();
    for (int degree : {1, 2})
        for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
            const auto m = square(8, 0.2);
            const FeSpace v = build_space(m, degree, Constraint::Gamma);
            const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
            const double g = default_gamma(degree);
            const BlockSystem b = assemble_blocks(v, w, p, variant, g, g);
            const SparseMatrix mt = build_system(b, v, w).matrix.transpose();
            const SparseMatrix diff = build_system(b, v, w).matrix - mt;
            for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
                for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
                    asym = std::max(asym, std::abs(it.value()));
            for (int trial = 0; trial < 100; ++trial) {
                Vector x(b.s_v.cols()), y(b.s_w.cols());
                for (auto& c : x)
                    c = dist(gen);
                for (auto& c : y)
                    c = dist(gen);
                min_quad = std::min({min_quad, x.dot(b.s_v * x), y.dot(b.s_w * y)});
            }
        }

    double pu = 0.0;
    const Mesh jittered = build_structured(8, 0.2);
    for (int degree : {1, 2})
        for (int trial = 0; trial < 100; ++trial) {
            double a = 0.5 * (1.0 + dist(gen)), c = 0.5 * (1.0 + dist(gen));
            if (a + c > 1.0)
                a = 1.0 - a, c = 1.0 - c;
            const ShapeEval s = shape_eval(degree, {a, c});
            const std::size_t t = static_cast<std::size_t>(trial) % jittered.num_triangles();
            const ElementGeometry geo(jittered, t);
            const PhysicalShape ph = physical_shape(degree, geo, {1.0 - a - c, a, c});
            double sum = 0.0, psum = 0.0;
            Vec2 grad;
            for (int i = 0; i < s.count; ++i) {
                sum += s.values[i];
                psum += ph.values[i];
                grad = grad + ph.grads[i];
            }
            // physical gradients scale like 1/h
            pu = std::max({pu, std::abs(sum - 1.0), std::abs(psum - 1.0),
                           jittered.diameter(t) * std::hypot(grad.x, grad.y)});
        }

    double area = 0.0;
    for (int n : {1, 8, 64})
        for (double jitter : {0.0, 0.2}) {
            const Mesh m = build_structured(n, jitter);
            double sum = 0.0;
            for (std::size_t t = 0; t < m.num_triangles(); ++t)
                sum += m.signed_area(t);
            area = std::max(area, std::abs(sum - 1.0));
        }

    const bool ok = asym < 1e-12 && min_quad >= -1e-12 && pu < 1e-13 && area < 1e-12;
    return {ok, "asymmetry " + fmt(asym) + ", min quadratic form " + fmt(min_quad) + ", partition of unity " +
                    fmt(pu) + ", area " + fmt(area)};
}

Outcome sweep_robustness()
{
    const auto start = Clock::now();
    const RunConfig c = default_config(1);
    const auto gammas = log_space(1e-4, 1.0, 9);
    const auto rows = run_sweep(c, 64, gammas, square_example());
    std::size_t finite = 0;
    for (const auto& r : rows)
        finite += r.result.report && r.result.error.empty();
    {
        std::ofstream out("acceptance_sweep.csv");
        write_sweep_csv(out, rows);
    }
    std::ifstream in("acceptance_sweep.csv");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    const double t = seconds_since(start);
    const bool ok = finite == gammas.size() && lines == gammas.size() + 1 && t < 180.0;
    return {ok, std::to_string(finite) + "/" + std::to_string(gammas.size()) + " finite solves, " +
                    std::to_string(lines) + " CSV lines, " + fmt(t) + " s"};
}

Outcome analytic_anchors()
{
    const CauchyProblem p = square_example();
    double worst = 0.0;
    for (int n : {8, 64})
        for (int degree : {1, 2}) {
            const auto m = square(n);
            const FeSpace v = build_space(m, degree, Constraint::Gamma);
            const std::vector<double> zero(v.num_dofs(), 0.0);
            worst = std::max({worst, std::abs(l2_error(v, zero, p.exact->u, Region::Global) - 1.0),
                              std::abs(l2_error(v, zero, p.exact->u, Region::Local) - 0.5)});
        }
    return {worst < 1e-10, "max deviation " + fmt(worst)};
}

}  // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    };
    auto guarded = [](const std::function<Outcome()>& f) -> Outcome {
        try {
            return f();
        } catch (const std::exception& e) {
            return {false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "oracle equivalence", guarded(oracle_equivalence));
    report(2, "discrete consistency", guarded(discrete_consistency));

    Studies studies;
    const auto start = Clock::now();
    studies.p1 = run_convergence(default_config(1), square_example());
    studies.p2 = run_convergence(default_config(2), square_example());
    studies.seconds = seconds_since(start);
    report(3, "stabilization rate", guarded([&] { return stabilization_rate(studies); }));
    report(4, "local L2 rate", guarded([&] { return local_rate(studies); }));
    report(5, "global L2 decrease", guarded([&] { return global_decrease(studies); }));
    report(6, "estimator decay", guarded([&] { return estimator_decay(studies); }));

    report(7, "structural invariants", guarded(structural_invariants));
    report(8, "sweep robustness", guarded(sweep_robustness));
    report(9, "analytic anchors", guarded(analytic_anchors));

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
