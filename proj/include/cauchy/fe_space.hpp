#ifndef CAUCHY_FE_SPACE_HPP
#define CAUCHY_FE_SPACE_HPP

#include "cauchy/mesh.hpp"
#include "cauchy/problem.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace cauchy {

/// Boundary part on which the space's functions vanish.
enum class Constraint { None, Gamma, GammaPrime };

/// Local DOF layout per triangle: vertices 0,1,2, then (degree 2) the
/// midpoints of local faces 0-1, 1-2, 2-0.
constexpr int local_dof_count(int degree) { return degree == 1 ? 3 : 6; }

struct ShapeEval {
    int count{0};
    std::array<double, 6> values{};
    std::array<Vec2, 6> grads{};
};

/// Lagrange basis on the reference triangle {(0,0),(1,0),(0,1)}.
ShapeEval shape_eval(int degree, Point2 ref);

/// Affine geometry of one triangle: barycentric coordinates and their
/// (constant) physical gradients.
class ElementGeometry {
public:
    ElementGeometry(const Mesh& mesh, std::size_t t);

    double area() const { return area_; }
    const std::array<Vec2, 3>& grad_lambda() const { return grad_lambda_; }
    const std::array<Point2, 3>& corners() const { return corners_; }

    Point2 map(Point2 ref) const;
    std::array<double, 3> barycentric(Point2 p) const;

private:
    std::array<Point2, 3> corners_;
    std::array<Vec2, 3> grad_lambda_;
    double area_;
};

/// Physical basis values, gradients and Laplacians at barycentric `lambda`.
struct PhysicalShape {
    int count{0};
    std::array<double, 6> values{};
    std::array<Vec2, 6> grads{};
    std::array<double, 6> laplacians{};
};

PhysicalShape physical_shape(int degree, const ElementGeometry& geo, const std::array<double, 3>& lambda);

/// Continuous Lagrange space of degree 1 or 2 on a mesh. DOFs are numbered
/// vertices first, then faces (degree 2). Immutable.
class FeSpace {
public:
    FeSpace(std::shared_ptr<const Mesh> mesh, int degree, Constraint side);

    const Mesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
    int degree() const { return degree_; }
    Constraint constraint() const { return side_; }

    std::size_t num_dofs() const { return coords_.size(); }
    std::span<const Point2> dof_coords() const { return coords_; }
    std::span<const std::size_t> cell_dofs(std::size_t t) const;

    bool is_dirichlet(std::size_t dof) const { return dirichlet_mask_.at(dof); }
    std::span<const std::size_t> dirichlet_dofs() const { return dirichlet_; }
    std::span<const std::size_t> free_dofs() const { return free_; }

private:
    std::shared_ptr<const Mesh> mesh_;
    int degree_;
    Constraint side_;
    std::vector<Point2> coords_;
    std::vector<std::size_t> cell_dofs_;
    std::vector<bool> dirichlet_mask_;
    std::vector<std::size_t> dirichlet_;
    std::vector<std::size_t> free_;
};

FeSpace build_space(std::shared_ptr<const Mesh> mesh, int degree, Constraint side);

/// Samples `field` at every DOF coordinate.
std::vector<double> nodal_interpolant(const FeSpace& space, const ScalarField& field);

/// Value, gradient and Laplacian of the finite element function `coeffs` on triangle
/// `t` at barycentric `lambda`.
struct PointValue {
    double value{0.0};
    Vec2 grad;
    double laplacian{0.0};
};

PointValue evaluate(const FeSpace& space, std::span<const double> coeffs, std::size_t t,
                    const std::array<double, 3>& lambda);

/// Locates `p` by a linear scan over triangles and evaluates there.
PointValue evaluate_at(const FeSpace& space, std::span<const double> coeffs, Point2 p);

}  // namespace cauchy

#endif  // CAUCHY_FE_SPACE_HPP
