#ifndef CAUCHY_PROBLEM_HPP
#define CAUCHY_PROBLEM_HPP

#include "cauchy/mesh.hpp"

#include <functional>
#include <optional>

namespace cauchy {

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Vec2(Point2)>;
/// Boundary datum evaluated at a point with the outward unit normal there.
using BoundaryField = std::function<double(Point2, Vec2)>;

struct ExactSolution {
    ScalarField u;
    VectorField grad_u;
};

/// Elliptic Cauchy problem on the unit square: -Laplace(u) = f in the
/// domain, with u = 0 and grad(u).n = psi on Gamma ({y=0} and {x=1}).
/// Gamma' carries no data.
struct CauchyProblem {
    ScalarField f;
    BoundaryField psi;
    std::optional<ExactSolution> exact;
};

/// u(x,y) = 30 x (1-x) y (1-y), f = -Laplace(u), psi the outward normal
/// derivative of u on Gamma.
CauchyProblem square_example();

/// Manufactured instance from a closed-form solution: f = -laplacian,
/// psi = grad_u . n. The caller is responsible for u vanishing on Gamma
/// when the instance is meant to be admissible.
CauchyProblem manufactured(ScalarField u, VectorField grad_u, ScalarField laplacian);

}  // namespace cauchy

#endif  // CAUCHY_PROBLEM_HPP
