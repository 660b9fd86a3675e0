#include "cauchy/solver.hpp"

#include "support/dense_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace cauchy {
namespace {

std::shared_ptr<const Mesh> square(int n, double jitter = 0.0)
{
    return std::make_shared<const Mesh>(build_structured(n, jitter));
}

SaddleSystem system_for(const FeSpace& v, const FeSpace& w, SwVariant variant, double gamma)
{
    return build_system(assemble_blocks(v, w, square_example(), variant, gamma, gamma), v, w);
}

Vector random_probe(const FeSpace& v, std::mt19937& gen)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector p = Vector::Zero(static_cast<Eigen::Index>(v.num_dofs()));
    for (auto d : v.free_dofs())
        p[static_cast<Eigen::Index>(d)] = dist(gen);
    return p;
}

TEST(BuildSystem, SingleCellHasTwoUnknowns)
{
    const auto m = square(1);
    const FeSpace v = build_space(m, 1, Constraint::Gamma);
    const FeSpace w = build_space(m, 1, Constraint::GammaPrime);
    const SaddleSystem sys = system_for(v, w, SwVariant::Jump, 0.01);
    ASSERT_EQ(sys.v_free.size(), 1u);
    ASSERT_EQ(sys.w_free.size(), 1u);
    EXPECT_EQ(v.dof_coords()[sys.v_free[0]].x, 0.0);
    EXPECT_EQ(v.dof_coords()[sys.v_free[0]].y, 1.0);
    EXPECT_EQ(w.dof_coords()[sys.w_free[0]].x, 1.0);
    EXPECT_EQ(w.dof_coords()[sys.w_free[0]].y, 0.0);
    EXPECT_EQ(sys.matrix.rows(), 2);
    EXPECT_EQ(sys.matrix.cols(), 2);
}

TEST(BuildSystem, ZeroStabilizersLeaveOffDiagonalBlocks)
{
    const auto m = square(3);
    const FeSpace v = build_space(m, 1, Constraint::Gamma);
    const FeSpace w = build_space(m, 1, Constraint::GammaPrime);
    BlockSystem b = assemble_blocks(v, w, square_example(), SwVariant::Jump, 1.0, 1.0);
    b.s_v.setZero();
    b.s_w.setZero();
    const SaddleSystem sys = build_system(b, v, w);
    const Eigen::MatrixXd d(sys.matrix);
    const auto nv = static_cast<Eigen::Index>(sys.v_free.size());
    const auto nw = static_cast<Eigen::Index>(sys.w_free.size());
    EXPECT_EQ(d.topLeftCorner(nv, nv).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(d.bottomRightCorner(nw, nw).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GT(d.topRightCorner(nv, nw).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((d.topRightCorner(nv, nw) - d.bottomLeftCorner(nw, nv).transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildSystem, Symmetric)
{
    const auto m = square(4, 0.1);
    for (int degree : {1, 2})
        for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
            const FeSpace v = build_space(m, degree, Constraint::Gamma);
            const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
            const Eigen::MatrixXd d(system_for(v, w, variant, 0.01).matrix);
            EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-13);
        }
}

TEST(BuildSystem, RejectsMismatchedBlocks)
{
    const auto m = square(2);
    const FeSpace v = build_space(m, 1, Constraint::Gamma);
    const FeSpace w = build_space(m, 2, Constraint::GammaPrime);
    const BlockSystem b = assemble_blocks(v, build_space(m, 1, Constraint::GammaPrime), square_example(),
                                          SwVariant::Jump, 0.01, 0.01);
    EXPECT_THROW(build_system(b, v, w), std::invalid_argument);
}

TEST(SolveSparse, Identity)
{
    SparseMatrix id(3, 3);
    id.setIdentity();
    const Vector x = solve_sparse(id, Vector::Unit(3, 0));
    EXPECT_EQ(x, Vector::Unit(3, 0));
}

TEST(SolveSparse, PermutationNeedsPivoting)
{
    SparseMatrix p(2, 2);
    p.insert(0, 1) = 1.0;
    p.insert(1, 0) = 1.0;
    const Vector x = solve_sparse(p, Vector{{1.0, 2.0}});
    EXPECT_DOUBLE_EQ(x[0], 2.0);
    EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(SolveSparse, SingularReportsPivot)
{
    SparseMatrix s(2, 2);
    s.insert(0, 0) = 1.0;
    s.makeCompressed();
    try {
        solve_sparse(s, Vector::Ones(2));
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_TRUE(e.pivot().has_value());
    }
}

TEST(Solve, MatchesDenseLu)
{
    const auto m = square(2);
    for (int degree : {1, 2})
        for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
            const FeSpace v = build_space(m, degree, Constraint::Gamma);
            const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
            const SaddleSystem sys = system_for(v, w, variant, default_gamma(degree));
            const DiscreteSolution sol = solve(sys);
            EXPECT_EQ(sol.stats.status, SolveStatus::Ok);
            EXPECT_LT(sol.stats.relative_residual, kResidualTolerance);
            const Vector dense = oracle::dense_lu_solve(Eigen::MatrixXd(sys.matrix), sys.rhs);
            Vector stacked(sys.rhs.size());
            for (std::size_t k = 0; k < sys.v_free.size(); ++k)
                stacked[static_cast<Eigen::Index>(k)] = sol.u[static_cast<Eigen::Index>(sys.v_free[k])];
            for (std::size_t k = 0; k < sys.w_free.size(); ++k)
                stacked[static_cast<Eigen::Index>(sys.v_free.size() + k)] =
                    sol.z[static_cast<Eigen::Index>(sys.w_free[k])];
            EXPECT_LT((stacked - dense).norm() / dense.norm(), 1e-9);
            for (auto d : v.dirichlet_dofs())
                EXPECT_EQ(sol.u[static_cast<Eigen::Index>(d)], 0.0);
            for (auto d : w.dirichlet_dofs())
                EXPECT_EQ(sol.z[static_cast<Eigen::Index>(d)], 0.0);
        }
}

TEST(Consistency, RandomProbes)
{
    std::mt19937 gen(17);
    for (int n : {2, 4, 8})
        for (int degree : {1, 2})
            for (SwVariant variant : {SwVariant::Jump, SwVariant::Galerkin}) {
                const auto m = square(n);
                const FeSpace v = build_space(m, degree, Constraint::Gamma);
                const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
                const double g = default_gamma(degree);
                EXPECT_LT(discrete_consistency_probe(v, w, g, g, variant, random_probe(v, gen)), 1e-9)
                    << "n=" << n << " degree=" << degree << " variant=" << to_string(variant);
            }
}

TEST(Consistency, InterpolantProbe)
{
    const auto m = square(8);
    const auto p = square_example();
    for (int degree : {1, 2}) {
        const FeSpace v = build_space(m, degree, Constraint::Gamma);
        const FeSpace w = build_space(m, degree, Constraint::GammaPrime);
        const auto c = nodal_interpolant(v, p.exact->u);
        const Vector probe = Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
        EXPECT_LT(discrete_consistency_probe(v, w, 0.01, 0.01, SwVariant::Jump, probe), 1e-9);
    }
}

TEST(Consistency, IndependentOfGammaScaling)
{
    std::mt19937 gen(23);
    const auto m = square(4);
    const FeSpace v = build_space(m, 1, Constraint::Gamma);
    const FeSpace w = build_space(m, 1, Constraint::GammaPrime);
    const Vector probe = random_probe(v, gen);
    for (double c : {0.01, 1.0, 100.0})
        EXPECT_LT(discrete_consistency_probe(v, w, 0.01 * c, 0.01 * c, SwVariant::Jump, probe), 1e-9);
}

TEST(Consistency, RejectsInadmissibleProbe)
{
    const auto m = square(2);
    const FeSpace v = build_space(m, 1, Constraint::Gamma);
    const FeSpace w = build_space(m, 1, Constraint::GammaPrime);
    Vector probe = Vector::Ones(static_cast<Eigen::Index>(v.num_dofs()));
    EXPECT_THROW(discrete_consistency_probe(v, w, 0.01, 0.01, SwVariant::Jump, probe), std::invalid_argument);
}

TEST(Solve, InvariantUnderVertexRelabeling)
{
    const Mesh base = build_structured(4, 0.15);
    std::vector<std::size_t> perm(base.num_vertices());
    std::iota(perm.begin(), perm.end(), 0u);
    std::mt19937 gen(29);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<Point2> verts(base.num_vertices());
    for (std::size_t i = 0; i < perm.size(); ++i)
        verts[perm[i]] = base.vertex(i);
    std::vector<Triangle> tris;
    for (const auto& t : base.triangles())
        tris.push_back({perm[t[0]], perm[t[1]], perm[t[2]]});
    const auto relabeled = std::make_shared<const Mesh>(tag_boundary(Mesh(verts, tris)));
    const auto original = std::make_shared<const Mesh>(base);

    for (int degree : {1, 2}) {
        const FeSpace v1 = build_space(original, degree, Constraint::Gamma);
        const FeSpace w1 = build_space(original, degree, Constraint::GammaPrime);
        const FeSpace v2 = build_space(relabeled, degree, Constraint::Gamma);
        const FeSpace w2 = build_space(relabeled, degree, Constraint::GammaPrime);
        const DiscreteSolution s1 = solve(system_for(v1, w1, SwVariant::Jump, 0.01));
        const DiscreteSolution s2 = solve(system_for(v2, w2, SwVariant::Jump, 0.01));
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int k = 0; k < 50; ++k) {
            const Point2 p{dist(gen), dist(gen)};
            const std::span<const double> c1(s1.u.data(), static_cast<std::size_t>(s1.u.size()));
            const std::span<const double> c2(s2.u.data(), static_cast<std::size_t>(s2.u.size()));
            EXPECT_NEAR(evaluate_at(v1, c1, p).value, evaluate_at(v2, c2, p).value, 1e-9);
        }
    }
}

}  // namespace
}  // namespace cauchy
