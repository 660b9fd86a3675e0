#ifndef CAUCHY_ANALYSIS_HPP
#define CAUCHY_ANALYSIS_HPP

#include "cauchy/assembly.hpp"
#include "cauchy/solver.hpp"

#include <span>
#include <vector>

namespace cauchy {

/// Integration region: the whole square, or the local subdomain
/// (0.5,1) x (0,0.5). A triangle belongs to the local subdomain when its
/// barycenter does.
enum class Region { Global, Local };

bool in_local_region(Point2 p);

struct ErrorReport {
    double h{0.0};
    std::size_t dofs_v{0}; // free DOFs of V_h
    std::size_t dofs_w{0}; // free DOFs of W_h
    double global_l2{0.0};
    double local_l2{0.0};
    double h1_semi{0.0};
    double stab_u{0.0};
    double stab_z{0.0};
    double eta{0.0};
};

/// ||a - b|| in L2 over `region` with a degree-8 rule, for two closed-form
/// fields.
double l2_distance(const Mesh& mesh, const ScalarField& a, const ScalarField& b, Region region);

/// ||u - u_h|| in L2 over `region`.
double l2_error(const FeSpace& space, std::span<const double> uh, const ScalarField& exact, Region region);

/// ||grad(u - u_h)|| in L2 over the whole domain.
double h1_seminorm_error(const FeSpace& space, std::span<const double> uh, const VectorField& grad_exact);

/// ||f|| in L2 over the whole domain.
double l2_norm(const Mesh& mesh, const ScalarField& f);

/// |u - u_h|_{s_V} from the Cauchy data: interior faces see only the jumps
/// of u_h, Gamma faces see psi - d_n u_h. Degree 2 adds the interior
/// Laplacian jumps of u_h.
double stab_seminorm_u(const FeSpace& v_space, std::span<const double> uh, const CauchyProblem& problem,
                       double gamma_v);

/// (z^T S_W z)^{1/2}.
double stab_seminorm_z(const SparseMatrix& s_w, const Vector& z);
double stab_seminorm_z(const FeSpace& w_space, const Vector& z, SwVariant variant, double gamma_w);

/// h ||f|| + |u - u_h|_{s_V} + |z_h|_{s_W}, the a posteriori quantity with
/// the interpolation constant set to one.
double eta(double h, double f_norm, double stab_u, double stab_z);

/// Full error report of one discrete solution against the exact solution.
ErrorReport evaluate_errors(const FeSpace& v_space, const FeSpace& w_space, const DiscreteSolution& solution,
                            const CauchyProblem& problem, SwVariant variant, double gamma_v, double gamma_w);

/// rate_i = log(v_{i-1}/v_i) / log(h_{i-1}/h_i), one entry per consecutive
/// pair. Throws std::invalid_argument for mismatched lengths, fewer than two
/// entries, or non-positive values.
std::vector<double> convergence_rate(std::span<const double> values, std::span<const double> hs);

/// max over random free-DOF vectors of h ||grad v_h|| / |v_h|_{s_V}.
/// `s_v` must include gamma_V; `stiffness_vv` is the V_h x V_h Dirichlet
/// form. Vectors with |v_h|_{s_V} < 1e-14 are skipped; returns 0 if every
/// sample was skipped.
double poincare_ratio(const FeSpace& v_space, const SparseMatrix& s_v, const SparseMatrix& stiffness_vv,
                      int samples, unsigned seed = 0);

/// Modulus of continuity: Hoelder C x^s or logarithmic C (|log x| + offset)^(-s).
struct XiCurve {
    enum class Kind { Hoelder, Logarithmic };
    Kind kind{Kind::Logarithmic};
    double c{1.0};
    double varsigma{0.5};
    double offset{0.0};
};

/// Throws std::invalid_argument unless 0 < x < 1.
double xi_eval(const XiCurve& curve, double x);

/// Least-squares fit of (c, varsigma) on log-transformed data, keeping
/// `kind` and `offset` fixed.
XiCurve fit_xi(XiCurve::Kind kind, std::span<const double> xs, std::span<const double> ys, double offset = 0.0);

}  // namespace cauchy

#endif  // CAUCHY_ANALYSIS_HPP
