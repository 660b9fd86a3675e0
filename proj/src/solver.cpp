#include "cauchy/solver.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <regex>

namespace cauchy {

namespace {

std::vector<long> free_map(const FeSpace& space, std::size_t offset)
{
    std::vector<long> map(space.num_dofs(), -1);
    const auto free = space.free_dofs();
    for (std::size_t k = 0; k < free.size(); ++k)
        map[free[k]] = static_cast<long>(offset + k);
    return map;
}

std::optional<long> trailing_index(const std::string& message)
{
    std::smatch m;
    static const std::regex re("(\\d+)\\s*$");
    if (std::regex_search(message, m, re))
        return std::stol(m[1].str());
    return std::nullopt;
}

}  // namespace

SaddleSystem build_system(const BlockSystem& blocks, const FeSpace& v_space, const FeSpace& w_space)
{
    const auto nv = static_cast<Eigen::Index>(v_space.num_dofs());
    const auto nw = static_cast<Eigen::Index>(w_space.num_dofs());
    if (blocks.s_v.rows() != nv || blocks.s_v.cols() != nv || blocks.a.rows() != nw || blocks.a.cols() != nv ||
        blocks.s_w.rows() != nw || blocks.s_w.cols() != nw || blocks.load.size() != nw || blocks.data.size() != nv)
        throw std::invalid_argument("build_system: block dimensions do not match the spaces");

    SaddleSystem sys;
    sys.n_v = v_space.num_dofs();
    sys.n_w = w_space.num_dofs();
    sys.v_free.assign(v_space.free_dofs().begin(), v_space.free_dofs().end());
    sys.w_free.assign(w_space.free_dofs().begin(), w_space.free_dofs().end());
    const std::size_t offset = sys.v_free.size();
    const auto vmap = free_map(v_space, 0);
    const auto wmap = free_map(w_space, offset);
    const auto size = static_cast<Eigen::Index>(offset + sys.w_free.size());

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(blocks.s_v.nonZeros() + 2 * blocks.a.nonZeros() + blocks.s_w.nonZeros()));
    for (Eigen::Index r = 0; r < blocks.s_v.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(blocks.s_v, r); it; ++it)
            if (vmap[it.row()] >= 0 && vmap[it.col()] >= 0)
                trip.emplace_back(vmap[it.row()], vmap[it.col()], it.value());
    for (Eigen::Index r = 0; r < blocks.a.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(blocks.a, r); it; ++it) {
            const long wi = wmap[it.row()];
            const long vj = vmap[it.col()];
            if (wi < 0 || vj < 0)
                continue;
            trip.emplace_back(wi, vj, it.value());
            trip.emplace_back(vj, wi, it.value());
        }
    for (Eigen::Index r = 0; r < blocks.s_w.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(blocks.s_w, r); it; ++it)
            if (wmap[it.row()] >= 0 && wmap[it.col()] >= 0)
                trip.emplace_back(wmap[it.row()], wmap[it.col()], -it.value());
    sys.matrix.resize(size, size);
    sys.matrix.setFromTriplets(trip.begin(), trip.end());
    sys.matrix.makeCompressed();

    sys.rhs.resize(size);
    for (std::size_t k = 0; k < sys.v_free.size(); ++k)
        sys.rhs[static_cast<Eigen::Index>(k)] = blocks.data[static_cast<Eigen::Index>(sys.v_free[k])];
    for (std::size_t k = 0; k < sys.w_free.size(); ++k)
        sys.rhs[static_cast<Eigen::Index>(offset + k)] = blocks.load[static_cast<Eigen::Index>(sys.w_free[k])];
    return sys;
}

Vector solve_sparse(const SparseMatrix& matrix, const Vector& rhs)
{
    using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
    const ColMatrix m = matrix;
    Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(m);
    lu.factorize(m);
    if (lu.info() != Eigen::Success) {
        const std::string msg = lu.lastErrorMessage();
        throw SolverError("sparse LU factorization failed: " + msg, trailing_index(msg));
    }
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SolverError("sparse LU solve failed", std::nullopt);
    return x;
}

DiscreteSolution solve(const SaddleSystem& system)
{
    DiscreteSolution sol;
    sol.u = Vector::Zero(static_cast<Eigen::Index>(system.n_v));
    sol.z = Vector::Zero(static_cast<Eigen::Index>(system.n_w));
    sol.stats.unknowns = static_cast<std::size_t>(system.rhs.size());
    if (system.rhs.size() == 0)
        return sol;

    const Vector x = solve_sparse(system.matrix, system.rhs);
    const double bnorm = system.rhs.norm();
    const double rnorm = (system.matrix * x - system.rhs).norm();
    sol.stats.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    if (!(sol.stats.relative_residual < kResidualTolerance))
        sol.stats.status = SolveStatus::ResidualAboveTolerance;

    const std::size_t offset = system.v_free.size();
    for (std::size_t k = 0; k < system.v_free.size(); ++k)
        sol.u[static_cast<Eigen::Index>(system.v_free[k])] = x[static_cast<Eigen::Index>(k)];
    for (std::size_t k = 0; k < system.w_free.size(); ++k)
        sol.z[static_cast<Eigen::Index>(system.w_free[k])] = x[static_cast<Eigen::Index>(offset + k)];
    return sol;
}

double discrete_consistency_probe(const FeSpace& v_space, const FeSpace& w_space, double gamma_v, double gamma_w,
                                  SwVariant variant, const Vector& probe)
{
    if (probe.size() != static_cast<Eigen::Index>(v_space.num_dofs()))
        throw std::invalid_argument("discrete_consistency_probe: probe has the wrong length");
    for (auto d : v_space.dirichlet_dofs())
        if (probe[static_cast<Eigen::Index>(d)] != 0.0)
            throw std::invalid_argument("discrete_consistency_probe: probe violates the V_h constraint");

    BlockSystem blocks;
    blocks.s_v = assemble_sV(v_space, gamma_v);
    blocks.a = assemble_stiffness(v_space, w_space);
    blocks.s_w = assemble_sW(w_space, variant, gamma_w);
    blocks.load = blocks.a * probe;
    blocks.data = blocks.s_v * probe;
    blocks.gamma_v = gamma_v;
    blocks.gamma_w = gamma_w;
    blocks.variant = variant;

    const DiscreteSolution sol = solve(build_system(blocks, v_space, w_space));
    return std::max((sol.u - probe).lpNorm<Eigen::Infinity>(), sol.z.lpNorm<Eigen::Infinity>());
}

}  // namespace cauchy
