#include "cauchy/analysis.hpp"

#include "cauchy/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cauchy {

namespace {

constexpr int kErrorQuadrature = 8;

template <typename Integrand>
double integrate_over(const Mesh& mesh, Region region, Integrand&& integrand)
{
    const QuadratureRule& rule = triangle_rule(kErrorQuadrature);
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        if (region == Region::Local && !in_local_region(mesh.barycenter(t)))
            continue;
        const ElementGeometry geo(mesh, t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2 r = rule.points[q];
            local += rule.weights[q] * integrand(t, geo.map(r), std::array<double, 3>{1.0 - r.x - r.y, r.x, r.y});
        }
        sum += 2.0 * geo.area() * local;
    }
    return sum;
}

}  // namespace

bool in_local_region(Point2 p) { return p.x > 0.5 && p.x < 1.0 && p.y > 0.0 && p.y < 0.5; }

double l2_distance(const Mesh& mesh, const ScalarField& a, const ScalarField& b, Region region)
{
    return std::sqrt(integrate_over(mesh, region, [&](std::size_t, Point2 p, const auto&) {
        const double d = a(p) - b(p);
        return d * d;
    }));
}

double l2_error(const FeSpace& space, std::span<const double> uh, const ScalarField& exact, Region region)
{
    return std::sqrt(integrate_over(space.mesh(), region, [&](std::size_t t, Point2 p, const auto& l) {
        const double d = exact(p) - evaluate(space, uh, t, l).value;
        return d * d;
    }));
}

double h1_seminorm_error(const FeSpace& space, std::span<const double> uh, const VectorField& grad_exact)
{
    return std::sqrt(integrate_over(space.mesh(), Region::Global, [&](std::size_t t, Point2 p, const auto& l) {
        const Vec2 d = grad_exact(p) - evaluate(space, uh, t, l).grad;
        return dot(d, d);
    }));
}

double l2_norm(const Mesh& mesh, const ScalarField& f)
{
    return std::sqrt(integrate_over(mesh, Region::Global, [&](std::size_t, Point2 p, const auto&) {
        const double v = f(p);
        return v * v;
    }));
}

double stab_seminorm_u(const FeSpace& v_space, std::span<const double> uh, const CauchyProblem& problem,
                       double gamma_v)
{
    const Mesh& mesh = v_space.mesh();
    const QuadratureRule& rule = segment_rule(5);
    double sum = 0.0;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const FaceKind kind = mesh.face_kind(f);
        if (kind != FaceKind::Interior && kind != FaceKind::Gamma)
            continue;
        const FaceGeometry g = face_geometry(mesh, f);
        const Point2 a = mesh.vertex(mesh.face(f).vertices[0]);
        const Point2 b = mesh.vertex(mesh.face(f).vertices[1]);
        const ElementGeometry left(mesh, g.left);
        double face_sum = 0.0;
        double lap_jump = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2 p = a + rule.points[q].x * (b - a);
            const PointValue vl = evaluate(v_space, uh, g.left, left.barycentric(p));
            double residual = 0.0;
            if (g.right) {
                const ElementGeometry right(mesh, *g.right);
                const PointValue vr = evaluate(v_space, uh, *g.right, right.barycentric(p));
                residual = -dot(vl.grad - vr.grad, g.normal);
                lap_jump = vl.laplacian - vr.laplacian;
            } else {
                residual = problem.psi(p, g.normal) - dot(vl.grad, g.normal);
            }
            face_sum += rule.weights[q] * g.h * residual * residual;
        }
        sum += g.h * face_sum;
        if (v_space.degree() == 2 && g.right)
            sum += g.h * g.h * g.h * g.h * lap_jump * lap_jump;
    }
    return std::sqrt(gamma_v * sum);
}

double stab_seminorm_z(const SparseMatrix& s_w, const Vector& z)
{
    return std::sqrt(std::max(0.0, z.dot(s_w * z)));
}

double stab_seminorm_z(const FeSpace& w_space, const Vector& z, SwVariant variant, double gamma_w)
{
    return stab_seminorm_z(assemble_sW(w_space, variant, gamma_w), z);
}

double eta(double h, double f_norm, double stab_u, double stab_z) { return h * f_norm + stab_u + stab_z; }

ErrorReport evaluate_errors(const FeSpace& v_space, const FeSpace& w_space, const DiscreteSolution& solution,
                            const CauchyProblem& problem, SwVariant variant, double gamma_v, double gamma_w)
{
    if (!problem.exact)
        throw std::invalid_argument("evaluate_errors: problem has no exact solution");
    const std::span<const double> uh(solution.u.data(), static_cast<std::size_t>(solution.u.size()));
    ErrorReport r;
    r.h = mesh_size(v_space.mesh());
    r.dofs_v = v_space.free_dofs().size();
    r.dofs_w = w_space.free_dofs().size();
    r.global_l2 = l2_error(v_space, uh, problem.exact->u, Region::Global);
    r.local_l2 = l2_error(v_space, uh, problem.exact->u, Region::Local);
    r.h1_semi = h1_seminorm_error(v_space, uh, problem.exact->grad_u);
    r.stab_u = stab_seminorm_u(v_space, uh, problem, gamma_v);
    r.stab_z = stab_seminorm_z(w_space, solution.z, variant, gamma_w);
    r.eta = eta(r.h, l2_norm(v_space.mesh(), problem.f), r.stab_u, r.stab_z);
    return r;
}

std::vector<double> convergence_rate(std::span<const double> values, std::span<const double> hs)
{
    if (values.size() != hs.size() || values.size() < 2)
        throw std::invalid_argument("convergence_rate: need two or more paired entries");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0) || !(hs[i] > 0.0))
            throw std::invalid_argument("convergence_rate: entries must be positive");
    std::vector<double> rates;
    for (std::size_t i = 1; i < values.size(); ++i)
        rates.push_back(std::log(values[i - 1] / values[i]) / std::log(hs[i - 1] / hs[i]));
    return rates;
}

double poincare_ratio(const FeSpace& v_space, const SparseMatrix& s_v, const SparseMatrix& stiffness_vv,
                      int samples, unsigned seed)
{
    if (samples < 1)
        throw std::invalid_argument("poincare_ratio: samples must be >= 1");
    const double h = mesh_size(v_space.mesh());
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(v_space.num_dofs()));
    for (int s = 0; s < samples; ++s) {
        for (auto d : v_space.free_dofs())
            v[static_cast<Eigen::Index>(d)] = dist(gen);
        const double stab = std::sqrt(std::max(0.0, v.dot(s_v * v)));
        if (stab < 1e-14)
            continue;
        const double grad = std::sqrt(std::max(0.0, v.dot(stiffness_vv * v)));
        worst = std::max(worst, h * grad / stab);
    }
    return worst;
}

double xi_eval(const XiCurve& curve, double x)
{
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("xi_eval: argument must lie in (0,1)");
    if (curve.kind == XiCurve::Kind::Hoelder)
        return curve.c * std::pow(x, curve.varsigma);
    return curve.c * std::pow(std::abs(std::log(x)) + curve.offset, -curve.varsigma);
}

XiCurve fit_xi(XiCurve::Kind kind, std::span<const double> xs, std::span<const double> ys, double offset)
{
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_xi: need two or more paired samples");
    // log y = log c + s * t with t = log x (Hoelder) or -log(|log x| + offset)
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && xs[i] < 1.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_xi: samples must satisfy 0 < x < 1 and y > 0");
        const double t = kind == XiCurve::Kind::Hoelder ? std::log(xs[i]) : -std::log(std::abs(std::log(xs[i])) + offset);
        const double y = std::log(ys[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double n = static_cast<double>(xs.size());
    const double denom = n * stt - st * st;
    if (std::abs(denom) < 1e-300)
        throw std::invalid_argument("fit_xi: degenerate abscissae");
    XiCurve c;
    c.kind = kind;
    c.offset = offset;
    c.varsigma = (n * sty - st * sy) / denom;
    c.c = std::exp((sy - c.varsigma * st) / n);
    return c;
}

}  // namespace cauchy
