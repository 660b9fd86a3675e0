#ifndef CAUCHY_SOLVER_HPP
#define CAUCHY_SOLVER_HPP

#include "cauchy/assembly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchy {

/// Symmetric indefinite system [[S_V, A^T], [A, -S_W]] [u; z] = [G; L]
/// restricted to the free DOFs of V_h (first block) and W_h (second block).
struct SaddleSystem {
    SparseMatrix matrix;
    Vector rhs;
    std::vector<std::size_t> v_free;
    std::vector<std::size_t> w_free;
    std::size_t n_v{0}; // total V_h DOFs
    std::size_t n_w{0}; // total W_h DOFs
};

/// Thrown when the factorization breaks down. `pivot` is the failing column
/// of the (reordered) system when the backend reports one.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::optional<long> pivot)
        : std::runtime_error(what), pivot_(pivot)
    {
    }
    std::optional<long> pivot() const { return pivot_; }

private:
    std::optional<long> pivot_;
};

enum class SolveStatus { Ok, ResidualAboveTolerance };

struct SolveStats {
    double relative_residual{0.0};
    SolveStatus status{SolveStatus::Ok};
    std::size_t unknowns{0};
};

struct DiscreteSolution {
    Vector u; // all V_h DOFs, constrained entries zero
    Vector z; // all W_h DOFs, constrained entries zero
    SolveStats stats;
};

SaddleSystem build_system(const BlockSystem& blocks, const FeSpace& v_space, const FeSpace& w_space);

/// Sparse LU with partial pivoting on a generic matrix.
/// Throws SolverError when the matrix is singular.
Vector solve_sparse(const SparseMatrix& matrix, const Vector& rhs);

constexpr double kResidualTolerance = 1e-10;

DiscreteSolution solve(const SaddleSystem& system);

/// Manufactures L = A probe and G = S_V probe, solves, and returns
/// max(|u - probe|_inf, |z|_inf). Zero in exact arithmetic.
double discrete_consistency_probe(const FeSpace& v_space, const FeSpace& w_space, double gamma_v, double gamma_w,
                                  SwVariant variant, const Vector& probe);

}  // namespace cauchy

#endif  // CAUCHY_SOLVER_HPP
