#include "cauchy/fe_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cauchy {

namespace {

constexpr std::array<std::array<int, 2>, 3> kEdgeVertices{{{0, 1}, {1, 2}, {2, 0}}};

// Basis in barycentric form, given gradients of the barycentric coordinates.
void fill_basis(int degree, const std::array<double, 3>& l, const std::array<Vec2, 3>& gl, PhysicalShape& out)
{
    if (degree == 1) {
        out.count = 3;
        for (int i = 0; i < 3; ++i) {
            out.values[i] = l[i];
            out.grads[i] = gl[i];
            out.laplacians[i] = 0.0;
        }
        return;
    }
    out.count = 6;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = l[i] * (2.0 * l[i] - 1.0);
        out.grads[i] = (4.0 * l[i] - 1.0) * gl[i];
        out.laplacians[i] = 4.0 * dot(gl[i], gl[i]);
    }
    for (int e = 0; e < 3; ++e) {
        const int a = kEdgeVertices[e][0];
        const int b = kEdgeVertices[e][1];
        out.values[3 + e] = 4.0 * l[a] * l[b];
        out.grads[3 + e] = 4.0 * (l[a] * gl[b] + l[b] * gl[a]);
        out.laplacians[3 + e] = 8.0 * dot(gl[a], gl[b]);
    }
}

void check_degree(int degree)
{
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("finite element degree must be 1 or 2");
}

}  // namespace

ShapeEval shape_eval(int degree, Point2 ref)
{
    check_degree(degree);
    const std::array<double, 3> l{1.0 - ref.x - ref.y, ref.x, ref.y};
    const std::array<Vec2, 3> gl{Vec2{-1.0, -1.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    PhysicalShape s;
    fill_basis(degree, l, gl, s);
    ShapeEval out;
    out.count = s.count;
    out.values = s.values;
    out.grads = s.grads;
    return out;
}

ElementGeometry::ElementGeometry(const Mesh& mesh, std::size_t t)
{
    const auto& tri = mesh.triangle(t);
    for (int k = 0; k < 3; ++k)
        corners_[k] = mesh.vertex(tri[k]);
    area_ = mesh.signed_area(t);
    // grad(lambda_k) = rot(opposite edge) / (2 area)
    for (int k = 0; k < 3; ++k) {
        const Point2 a = corners_[(k + 1) % 3];
        const Point2 b = corners_[(k + 2) % 3];
        grad_lambda_[k] = Vec2{(a.y - b.y) / (2.0 * area_), (b.x - a.x) / (2.0 * area_)};
    }
}

Point2 ElementGeometry::map(Point2 ref) const
{
    return corners_[0] + ref.x * (corners_[1] - corners_[0]) + ref.y * (corners_[2] - corners_[0]);
}

std::array<double, 3> ElementGeometry::barycentric(Point2 p) const
{
    std::array<double, 3> l{};
    for (int k = 0; k < 3; ++k)
        l[k] = dot(grad_lambda_[k], p - corners_[(k + 1) % 3]);
    // lambda_k vanishes on the opposite edge, which contains corner k+1
    return l;
}

PhysicalShape physical_shape(int degree, const ElementGeometry& geo, const std::array<double, 3>& lambda)
{
    check_degree(degree);
    PhysicalShape out;
    fill_basis(degree, lambda, geo.grad_lambda(), out);
    return out;
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, int degree, Constraint side)
    : mesh_(std::move(mesh)), degree_(degree), side_(side)
{
    if (!mesh_)
        throw std::invalid_argument("FeSpace: null mesh");
    check_degree(degree_);
    if (side_ != Constraint::None && !mesh_->is_tagged())
        throw std::invalid_argument("FeSpace: constrained space requires a boundary-tagged mesh");

    const Mesh& m = *mesh_;
    const std::size_t nv = m.num_vertices();
    coords_.assign(m.vertices().begin(), m.vertices().end());
    if (degree_ == 2)
        for (const Face& f : m.faces())
            coords_.push_back(0.5 * (m.vertex(f.vertices[0]) + m.vertex(f.vertices[1])));

    const int nloc = local_dof_count(degree_);
    cell_dofs_.reserve(m.num_triangles() * nloc);
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        for (auto v : m.triangle(t))
            cell_dofs_.push_back(v);
        if (degree_ == 2)
            for (auto f : m.triangle_faces(t))
                cell_dofs_.push_back(nv + f);
    }

    dirichlet_mask_.assign(coords_.size(), false);
    if (side_ != Constraint::None) {
        const FaceKind kind = side_ == Constraint::Gamma ? FaceKind::Gamma : FaceKind::GammaPrime;
        for (std::size_t f = 0; f < m.num_faces(); ++f) {
            if (m.face_kind(f) != kind)
                continue;
            dirichlet_mask_[m.face(f).vertices[0]] = true;
            dirichlet_mask_[m.face(f).vertices[1]] = true;
            if (degree_ == 2)
                dirichlet_mask_[nv + f] = true;
        }
    }
    for (std::size_t i = 0; i < coords_.size(); ++i)
        (dirichlet_mask_[i] ? dirichlet_ : free_).push_back(i);
}

std::span<const std::size_t> FeSpace::cell_dofs(std::size_t t) const
{
    const auto nloc = static_cast<std::size_t>(local_dof_count(degree_));
    return std::span<const std::size_t>(cell_dofs_).subspan(t * nloc, nloc);
}

FeSpace build_space(std::shared_ptr<const Mesh> mesh, int degree, Constraint side)
{
    return FeSpace(std::move(mesh), degree, side);
}

std::vector<double> nodal_interpolant(const FeSpace& space, const ScalarField& field)
{
    std::vector<double> c;
    c.reserve(space.num_dofs());
    for (const Point2& p : space.dof_coords())
        c.push_back(field(p));
    return c;
}

PointValue evaluate(const FeSpace& space, std::span<const double> coeffs, std::size_t t,
                    const std::array<double, 3>& lambda)
{
    const ElementGeometry geo(space.mesh(), t);
    const PhysicalShape s = physical_shape(space.degree(), geo, lambda);
    const auto dofs = space.cell_dofs(t);
    PointValue out;
    for (int i = 0; i < s.count; ++i) {
        const double c = coeffs[dofs[i]];
        out.value += c * s.values[i];
        out.grad = out.grad + c * s.grads[i];
        out.laplacian += c * s.laplacians[i];
    }
    return out;
}

PointValue evaluate_at(const FeSpace& space, std::span<const double> coeffs, Point2 p)
{
    constexpr double tol = 1e-12;
    for (std::size_t t = 0; t < space.mesh().num_triangles(); ++t) {
        const ElementGeometry geo(space.mesh(), t);
        const auto l = geo.barycentric(p);
        if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol)
            return evaluate(space, coeffs, t, l);
    }
    throw std::invalid_argument("evaluate_at: point outside the mesh");
}

}  // namespace cauchy
