#ifndef CAUCHY_QUADRATURE_HPP
#define CAUCHY_QUADRATURE_HPP

#include "cauchy/mesh.hpp"

#include <vector>

namespace cauchy {

/// Points are reference coordinates: (xi, eta) on the triangle
/// {(0,0),(1,0),(0,1)} (weights sum to 1/2), or (s, 0) on the segment [0,1]
/// (weights sum to 1).
struct QuadratureRule {
    std::vector<Point2> points;
    std::vector<double> weights;
    int degree{0};

    std::size_t size() const { return points.size(); }
};

/// Rule exact for polynomials of total degree <= `degree` on the reference
/// triangle. Supported: 0..8. Throws std::invalid_argument otherwise.
const QuadratureRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0,1], exact up to `degree`. Supported: 0..9.
const QuadratureRule& segment_rule(int degree);

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1,1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace cauchy

#endif  // CAUCHY_QUADRATURE_HPP
