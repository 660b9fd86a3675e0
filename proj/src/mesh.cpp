#include "cauchy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace cauchy {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

double signed_area_of(Point2 a, Point2 b, Point2 c)
{
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

// Unit direction that depends only on (vertex, seed). mt19937 and seed_seq
// outputs are fixed by the standard, so this is portable.
Vec2 jitter_direction(std::size_t vertex, unsigned seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(vertex), static_cast<std::uint32_t>(seed), 0x9e3779b9U};
    std::mt19937 gen(seq);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(gen()) / 4294967296.0;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Mesh::Mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles))
{
    if (triangles_.empty())
        throw std::invalid_argument("Mesh: no triangles");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_to_face;
    tri_faces_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (auto v : tri)
            if (v >= vertices_.size())
                throw std::invalid_argument("Mesh: vertex index out of range in triangle " + std::to_string(t));
        const double area = signed_area_of(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
        if (!(area > 0.0))
            throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " has non-positive area");
        for (int e = 0; e < 3; ++e) {
            const std::size_t a = tri[e];
            const std::size_t b = tri[(e + 1) % 3];
            const auto key = std::minmax(a, b);
            auto it = edge_to_face.find(key);
            if (it == edge_to_face.end()) {
                edge_to_face.emplace(key, faces_.size());
                tri_faces_[t][e] = faces_.size();
                faces_.push_back(Face{{a, b}, t, std::nullopt});
            } else {
                Face& face = faces_[it->second];
                if (face.right)
                    throw std::invalid_argument("Mesh: edge shared by more than two triangles");
                if (face.vertices[0] != b || face.vertices[1] != a)
                    throw std::invalid_argument("Mesh: inconsistent triangle orientation");
                face.right = t;
                tri_faces_[t][e] = it->second;
            }
        }
    }
    kinds_.resize(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f)
        kinds_[f] = faces_[f].is_boundary() ? FaceKind::Untagged : FaceKind::Interior;
}

double Mesh::signed_area(std::size_t t) const
{
    const auto& tri = triangle(t);
    return signed_area_of(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::diameter(std::size_t t) const
{
    const auto& tri = triangle(t);
    return std::max({distance(vertices_[tri[0]], vertices_[tri[1]]),
                     distance(vertices_[tri[1]], vertices_[tri[2]]),
                     distance(vertices_[tri[2]], vertices_[tri[0]])});
}

Point2 Mesh::barycenter(std::size_t t) const
{
    const auto& tri = triangle(t);
    const Point2 s = vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]];
    return (1.0 / 3.0) * s;
}

Mesh Mesh::with_face_kinds(std::vector<FaceKind> kinds) const
{
    if (kinds.size() != faces_.size())
        throw std::invalid_argument("Mesh::with_face_kinds: size mismatch");
    bool all_tagged = true;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        if ((kinds[f] == FaceKind::Interior) != !faces_[f].is_boundary())
            throw std::invalid_argument("Mesh::with_face_kinds: interior/boundary kind mismatch at face " +
                                        std::to_string(f));
        if (kinds[f] == FaceKind::Untagged)
            all_tagged = false;
    }
    Mesh out = *this;
    out.kinds_ = std::move(kinds);
    out.tagged_ = all_tagged;
    return out;
}

Mesh build_structured(int n, double jitter, unsigned seed)
{
    if (n < 1)
        throw std::invalid_argument("build_structured: n must be >= 1");
    if (!(jitter >= 0.0 && jitter < 0.3))
        throw std::invalid_argument("build_structured: jitter must lie in [0, 0.3)");
    const auto np = static_cast<std::size_t>(n) + 1;
    const double h = 1.0 / n;
    std::vector<Point2> vertices;
    vertices.reserve(np * np);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < np; ++i) {
            Point2 p{static_cast<double>(i) * h, static_cast<double>(j) * h};
            const bool interior = i > 0 && j > 0 && i + 1 < np && j + 1 < np;
            if (interior && jitter > 0.0)
                p = p + (jitter * h) * jitter_direction(vertices.size(), seed);
            vertices.push_back(p);
        }
    std::vector<Triangle> triangles;
    triangles.reserve(2 * static_cast<std::size_t>(n) * n);
    for (std::size_t j = 0; j + 1 < np; ++j)
        for (std::size_t i = 0; i + 1 < np; ++i) {
            const std::size_t v00 = j * np + i;
            const std::size_t v10 = v00 + 1;
            const std::size_t v01 = v00 + np;
            const std::size_t v11 = v01 + 1;
            triangles.push_back({v00, v10, v11});
            triangles.push_back({v00, v11, v01});
        }
    // The Mesh constructor rejects any triangle flipped by the jitter.
    return tag_boundary(Mesh(std::move(vertices), std::move(triangles)));
}

Mesh tag_boundary(const Mesh& mesh)
{
    constexpr double tol = 1e-12;
    std::vector<FaceKind> kinds(mesh.num_faces(), FaceKind::Interior);
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const Face& face = mesh.face(f);
        if (!face.is_boundary())
            continue;
        const Point2 a = mesh.vertex(face.vertices[0]);
        const Point2 b = mesh.vertex(face.vertices[1]);
        const Point2 m = 0.5 * (a + b);
        if (std::abs(m.y) <= tol || std::abs(m.x - 1.0) <= tol)
            kinds[f] = FaceKind::Gamma;
        else if (std::abs(m.y - 1.0) <= tol || std::abs(m.x) <= tol)
            kinds[f] = FaceKind::GammaPrime;
        else
            throw std::invalid_argument("tag_boundary: boundary face " + std::to_string(f) +
                                        " is not on the unit-square boundary");
    }
    return mesh.with_face_kinds(std::move(kinds));
}

FaceGeometry face_geometry(const Mesh& mesh, std::size_t face)
{
    const Face& f = mesh.face(face);
    const Point2 a = mesh.vertex(f.vertices[0]);
    const Point2 b = mesh.vertex(f.vertices[1]);
    const double len = distance(a, b);
    // right-hand normal of a -> b points away from the CCW left triangle
    const Vec2 normal{(b.y - a.y) / len, -(b.x - a.x) / len};
    return FaceGeometry{len, normal, 0.5 * (a + b), f.left, f.right};
}

double mesh_size(const Mesh& mesh)
{
    double h = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        h = std::max(h, mesh.diameter(t));
    return h;
}

double min_angle_degrees(const Mesh& mesh)
{
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& tri : mesh.triangles())
        for (int k = 0; k < 3; ++k) {
            const Point2 p = mesh.vertex(tri[k]);
            const Vec2 u = mesh.vertex(tri[(k + 1) % 3]) - p;
            const Vec2 v = mesh.vertex(tri[(k + 2) % 3]) - p;
            const double c = dot(u, v) / (std::hypot(u.x, u.y) * std::hypot(v.x, v.y));
            smallest = std::min(smallest, std::acos(std::clamp(c, -1.0, 1.0)));
        }
    return smallest * 180.0 / std::numbers::pi;
}

}  // namespace cauchy
