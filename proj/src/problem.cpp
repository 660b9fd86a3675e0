#include "cauchy/problem.hpp"

#include <cmath>
#include <utility>

namespace cauchy {

CauchyProblem square_example()
{
    CauchyProblem p;
    p.f = [](Point2 q) { return 60.0 * (q.x * (1.0 - q.x) + q.y * (1.0 - q.y)); };
    // On {y=0}: -du/dy = -30 x(1-x). On {x=1}: du/dx = -30 y(1-y).
    // Both branches vanish at the shared corner (1,0).
    p.psi = [](Point2 q, Vec2 n) {
        if (std::abs(n.y + 1.0) < 1e-12)
            return -30.0 * q.x * (1.0 - q.x);
        if (std::abs(n.x - 1.0) < 1e-12)
            return -30.0 * q.y * (1.0 - q.y);
        const double ux = 30.0 * (1.0 - 2.0 * q.x) * q.y * (1.0 - q.y);
        const double uy = 30.0 * q.x * (1.0 - q.x) * (1.0 - 2.0 * q.y);
        return ux * n.x + uy * n.y;
    };
    p.exact = ExactSolution{
        [](Point2 q) { return 30.0 * q.x * (1.0 - q.x) * q.y * (1.0 - q.y); },
        [](Point2 q) {
            return Vec2{30.0 * (1.0 - 2.0 * q.x) * q.y * (1.0 - q.y), 30.0 * q.x * (1.0 - q.x) * (1.0 - 2.0 * q.y)};
        },
    };
    return p;
}

CauchyProblem manufactured(ScalarField u, VectorField grad_u, ScalarField laplacian)
{
    CauchyProblem p;
    p.f = [lap = std::move(laplacian)](Point2 q) { return -lap(q); };
    p.psi = [grad_u](Point2 q, Vec2 n) { return dot(grad_u(q), n); };
    p.exact = ExactSolution{std::move(u), std::move(grad_u)};
    return p;
}

}  // namespace cauchy
