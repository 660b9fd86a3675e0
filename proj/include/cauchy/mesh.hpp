#ifndef CAUCHY_MESH_HPP
#define CAUCHY_MESH_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cauchy {

struct Point2 {
    double x{0.0};
    double y{0.0};
};

using Vec2 = Point2;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double distance(Point2 a, Point2 b);

/// Which part of the domain boundary a face belongs to. Interior faces carry
/// `Interior`; boundary faces of an untagged mesh carry `Untagged`.
enum class FaceKind { Interior, Untagged, Gamma, GammaPrime };

using Triangle = std::array<std::size_t, 3>;

/// An edge of the triangulation. `vertices` follows the counter-clockwise
/// orientation of `left`, so the right-hand normal of (v0 -> v1) points from
/// `left` into `right` (or out of the domain on the boundary).
struct Face {
    std::array<std::size_t, 2> vertices{};
    std::size_t left{0};
    std::optional<std::size_t> right;

    bool is_boundary() const { return !right.has_value(); }
};

struct FaceGeometry {
    double h{0.0};
    Vec2 normal;
    Point2 midpoint;
    std::size_t left{0};
    std::optional<std::size_t> right;
};

/// Conforming triangulation with face adjacency. Immutable once built.
///
/// Local face `e` of a triangle joins its local vertices e and (e+1)%3.
class Mesh {
public:
    /// Builds faces and adjacency. Throws std::invalid_argument if a triangle
    /// has non-positive signed area, an index is out of range, or an edge is
    /// shared by more than two triangles.
    Mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles);

    std::span<const Point2> vertices() const { return vertices_; }
    std::span<const Triangle> triangles() const { return triangles_; }
    std::span<const Face> faces() const { return faces_; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    const Point2& vertex(std::size_t v) const { return vertices_.at(v); }
    const Triangle& triangle(std::size_t t) const { return triangles_.at(t); }
    const Face& face(std::size_t f) const { return faces_.at(f); }

    /// Global face indices of the three local faces of triangle `t`.
    const std::array<std::size_t, 3>& triangle_faces(std::size_t t) const { return tri_faces_.at(t); }

    FaceKind face_kind(std::size_t f) const { return kinds_.at(f); }
    bool is_tagged() const { return tagged_; }

    double signed_area(std::size_t t) const;
    double diameter(std::size_t t) const;
    Point2 barycenter(std::size_t t) const;

    /// Copy of this mesh with boundary face kinds replaced. `kinds` must have
    /// one entry per face; interior entries must stay `Interior`.
    Mesh with_face_kinds(std::vector<FaceKind> kinds) const;

private:
    std::vector<Point2> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Face> faces_;
    std::vector<std::array<std::size_t, 3>> tri_faces_;
    std::vector<FaceKind> kinds_;
    bool tagged_{false};
};

/// Structured n x n grid of the unit square, each cell cut along its (+1,+1)
/// diagonal. Interior vertices are displaced by jitter/n in a pseudo-random
/// direction derived from (vertex index, seed). The result is boundary tagged.
Mesh build_structured(int n, double jitter = 0.0, unsigned seed = 0);

/// Tags boundary faces of a unit-square mesh: {y=0} and {x=1} are Gamma,
/// {y=1} and {x=0} are GammaPrime. Throws std::invalid_argument if a boundary
/// face midpoint is on none of the four sides (tolerance 1e-12).
Mesh tag_boundary(const Mesh& mesh);

FaceGeometry face_geometry(const Mesh& mesh, std::size_t face);

/// Largest triangle diameter.
double mesh_size(const Mesh& mesh);

/// Smallest interior angle over all triangles, in degrees.
double min_angle_degrees(const Mesh& mesh);

}  // namespace cauchy

#endif  // CAUCHY_MESH_HPP
