#include "cauchy/assembly.hpp"

#include "cauchy/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace cauchy {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const Triplets& t)
{
    SparseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

std::size_t local_index(std::vector<std::size_t>& dofs, std::size_t dof)
{
    auto it = std::find(dofs.begin(), dofs.end(), dof);
    if (it != dofs.end())
        return static_cast<std::size_t>(it - dofs.begin());
    dofs.push_back(dof);
    return dofs.size() - 1;
}

void add_side(const FeSpace& space, std::size_t t, const std::vector<Point2>& points, Vec2 normal, double sign,
              FaceJumps& out)
{
    const ElementGeometry geo(space.mesh(), t);
    const auto cell = space.cell_dofs(t);
    for (std::size_t q = 0; q < points.size(); ++q) {
        const PhysicalShape s = physical_shape(space.degree(), geo, geo.barycentric(points[q]));
        for (int i = 0; i < s.count; ++i) {
            const std::size_t li = local_index(out.dofs, cell[i]);
            for (auto& row : out.jump)
                row.resize(out.dofs.size(), 0.0);
            out.laplacian_jump.resize(out.dofs.size(), 0.0);
            out.jump[q][li] += sign * dot(s.grads[i], normal);
            if (q == 0)
                out.laplacian_jump[li] += sign * s.laplacians[i];
        }
    }
}

int load_degree(const FeSpace& space) { return space.degree() + 4; }

}  // namespace

std::string_view to_string(SwVariant v) { return v == SwVariant::Galerkin ? "galerkin" : "jump"; }

SwVariant parse_sw_variant(std::string_view s)
{
    if (s == "galerkin" || s == "Galerkin")
        return SwVariant::Galerkin;
    if (s == "jump" || s == "Jump")
        return SwVariant::Jump;
    throw std::invalid_argument("unknown s_W variant '" + std::string(s) + "' (expected galerkin|jump)");
}

double default_gamma(int degree) { return degree == 2 ? 1e-3 : 1e-2; }

FaceJumps face_jumps(const FeSpace& space, std::size_t face, int quad_degree)
{
    const Mesh& mesh = space.mesh();
    const FaceGeometry g = face_geometry(mesh, face);
    const Face& f = mesh.face(face);
    const Point2 a = mesh.vertex(f.vertices[0]);
    const Point2 b = mesh.vertex(f.vertices[1]);
    const QuadratureRule& rule = segment_rule(quad_degree);

    FaceJumps out;
    out.normal = g.normal;
    out.h = g.h;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        out.points.push_back(a + rule.points[q].x * (b - a));
        out.weights.push_back(rule.weights[q] * g.h);
    }
    out.jump.assign(rule.size(), {});
    add_side(space, g.left, out.points, g.normal, 1.0, out);
    if (g.right)
        add_side(space, *g.right, out.points, g.normal, -1.0, out);
    else
        std::fill(out.laplacian_jump.begin(), out.laplacian_jump.end(), 0.0);
    return out;
}

SparseMatrix assemble_stiffness(const FeSpace& trial, const FeSpace& test)
{
    if (&trial.mesh() != &test.mesh())
        throw std::invalid_argument("assemble_stiffness: trial and test spaces live on different meshes");
    const Mesh& mesh = trial.mesh();
    const QuadratureRule& rule = triangle_rule(std::max(2 * (std::max(trial.degree(), test.degree()) - 1), 1));
    Triplets trip;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const ElementGeometry geo(mesh, t);
        const auto cu = trial.cell_dofs(t);
        const auto cw = test.cell_dofs(t);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2 r = rule.points[q];
            const std::array<double, 3> l{1.0 - r.x - r.y, r.x, r.y};
            const PhysicalShape su = physical_shape(trial.degree(), geo, l);
            const PhysicalShape sw = physical_shape(test.degree(), geo, l);
            const double w = rule.weights[q] * 2.0 * geo.area();
            for (int i = 0; i < sw.count; ++i)
                for (int j = 0; j < su.count; ++j)
                    trip.emplace_back(static_cast<int>(cw[i]), static_cast<int>(cu[j]),
                                      w * dot(su.grads[j], sw.grads[i]));
        }
    }
    return from_triplets(test.num_dofs(), trial.num_dofs(), trip);
}

SparseMatrix assemble_jump_penalty(const FeSpace& space, FaceKind boundary, double gamma)
{
    const Mesh& mesh = space.mesh();
    const int quad = 2 * (space.degree() - 1) + 1;
    Triplets trip;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const FaceKind kind = mesh.face_kind(f);
        if (kind != FaceKind::Interior && kind != boundary)
            continue;
        const FaceJumps fj = face_jumps(space, f, quad);
        const std::size_t n = fj.dofs.size();
        std::vector<double> local(n * n, 0.0);
        for (std::size_t q = 0; q < fj.weights.size(); ++q) {
            const double w = gamma * fj.h * fj.weights[q];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    local[i * n + j] += w * fj.jump[q][i] * fj.jump[q][j];
        }
        if (space.degree() == 2 && kind == FaceKind::Interior) {
            const double w = gamma * fj.h * fj.h * fj.h * fj.h;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    local[i * n + j] += w * fj.laplacian_jump[i] * fj.laplacian_jump[j];
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                trip.emplace_back(static_cast<int>(fj.dofs[i]), static_cast<int>(fj.dofs[j]), local[i * n + j]);
    }
    return from_triplets(space.num_dofs(), space.num_dofs(), trip);
}

SparseMatrix assemble_sV(const FeSpace& space, double gamma_v)
{
    return assemble_jump_penalty(space, FaceKind::Gamma, gamma_v);
}

SparseMatrix assemble_sW(const FeSpace& space, SwVariant variant, double gamma_w)
{
    if (variant == SwVariant::Galerkin)
        return assemble_stiffness(space, space);
    return assemble_jump_penalty(space, FaceKind::GammaPrime, gamma_w);
}

Vector assemble_load(const FeSpace& space, const CauchyProblem& problem)
{
    const Mesh& mesh = space.mesh();
    Vector load = Vector::Zero(static_cast<Eigen::Index>(space.num_dofs()));
    const QuadratureRule& rule = triangle_rule(load_degree(space));
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const ElementGeometry geo(mesh, t);
        const auto cell = space.cell_dofs(t);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2 r = rule.points[q];
            const PhysicalShape s = physical_shape(space.degree(), geo, {1.0 - r.x - r.y, r.x, r.y});
            const double w = rule.weights[q] * 2.0 * geo.area() * problem.f(geo.map(r));
            for (int i = 0; i < s.count; ++i)
                load[static_cast<Eigen::Index>(cell[i])] += w * s.values[i];
        }
    }
    const QuadratureRule& seg = segment_rule(load_degree(space));
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        if (mesh.face_kind(f) != FaceKind::Gamma)
            continue;
        const FaceGeometry g = face_geometry(mesh, f);
        const Point2 a = mesh.vertex(mesh.face(f).vertices[0]);
        const Point2 b = mesh.vertex(mesh.face(f).vertices[1]);
        const ElementGeometry geo(mesh, g.left);
        const auto cell = space.cell_dofs(g.left);
        for (std::size_t q = 0; q < seg.size(); ++q) {
            const Point2 p = a + seg.points[q].x * (b - a);
            const PhysicalShape s = physical_shape(space.degree(), geo, geo.barycentric(p));
            const double w = seg.weights[q] * g.h * problem.psi(p, g.normal);
            for (int i = 0; i < s.count; ++i)
                load[static_cast<Eigen::Index>(cell[i])] += w * s.values[i];
        }
    }
    return load;
}

Vector assemble_data_term(const FeSpace& space, const CauchyProblem& problem, double gamma_v)
{
    const Mesh& mesh = space.mesh();
    Vector data = Vector::Zero(static_cast<Eigen::Index>(space.num_dofs()));
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        if (mesh.face_kind(f) != FaceKind::Gamma)
            continue;
        const FaceJumps fj = face_jumps(space, f, load_degree(space));
        for (std::size_t q = 0; q < fj.weights.size(); ++q) {
            const double w = gamma_v * fj.h * fj.weights[q] * problem.psi(fj.points[q], fj.normal);
            for (std::size_t i = 0; i < fj.dofs.size(); ++i)
                data[static_cast<Eigen::Index>(fj.dofs[i])] += w * fj.jump[q][i];
        }
    }
    return data;
}

BlockSystem assemble_blocks(const FeSpace& v_space, const FeSpace& w_space, const CauchyProblem& problem,
                            SwVariant variant, double gamma_v, double gamma_w)
{
    BlockSystem b;
    b.s_v = assemble_sV(v_space, gamma_v);
    b.a = assemble_stiffness(v_space, w_space);
    b.s_w = assemble_sW(w_space, variant, gamma_w);
    b.load = assemble_load(w_space, problem);
    b.data = assemble_data_term(v_space, problem, gamma_v);
    b.gamma_v = gamma_v;
    b.gamma_w = gamma_w;
    b.variant = variant;
    return b;
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_matrix_market: cannot open " + path.string());
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    char buf[64];
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            std::snprintf(buf, sizeof buf, "%.17g", it.value());
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << '\n';
        }
}

}  // namespace cauchy
