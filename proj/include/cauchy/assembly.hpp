#ifndef CAUCHY_ASSEMBLY_HPP
#define CAUCHY_ASSEMBLY_HPP

#include "cauchy/fe_space.hpp"
#include "cauchy/problem.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <filesystem>
#include <string_view>
#include <vector>

namespace cauchy {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Choice of the dual-variable stabilizer: the full Dirichlet form on W_h, or
/// the gradient-jump penalty on interior and Gamma' faces.
enum class SwVariant { Galerkin, Jump };

std::string_view to_string(SwVariant v);
SwVariant parse_sw_variant(std::string_view s);

/// Default penalty parameter for each polynomial degree (0.01 for P1,
/// 0.001 for P2).
double default_gamma(int degree);

/// Normal-derivative jumps of every basis function touching one face,
/// tabulated at the quadrature points of the face. On a boundary face the
/// "jump" is the outward normal derivative itself.
struct FaceJumps {
    std::vector<std::size_t> dofs;
    std::vector<double> weights;           // physical: rule weight times face length
    std::vector<Point2> points;            // physical quadrature points
    std::vector<std::vector<double>> jump; // jump[q][local dof]
    std::vector<double> laplacian_jump;    // constant along the face; interior faces only
    Vec2 normal;
    double h{0.0};
};

FaceJumps face_jumps(const FeSpace& space, std::size_t face, int quad_degree);

/// A[i,j] = integral of grad(phi_j^trial) . grad(phi_i^test). Rows follow the
/// test space. Dirichlet rows and columns are kept.
SparseMatrix assemble_stiffness(const FeSpace& trial, const FeSpace& test);

/// Gradient-jump penalty over interior faces and boundary faces of kind
/// `boundary`, weighted by gamma * h_F. Degree 2 adds the interior
/// Laplacian-jump term weighted by gamma * h_F^3.
SparseMatrix assemble_jump_penalty(const FeSpace& space, FaceKind boundary, double gamma);

/// s_V on V_h: jump penalty over interior and Gamma faces.
SparseMatrix assemble_sV(const FeSpace& space, double gamma_v);

/// s_W on W_h. Galerkin ignores gamma_w.
SparseMatrix assemble_sW(const FeSpace& space, SwVariant variant, double gamma_w);

/// l(phi_i) = integral of f phi_i plus integral over Gamma of psi phi_i.
Vector assemble_load(const FeSpace& space, const CauchyProblem& problem);

/// s_V(u, phi_i) computed from the Cauchy data: only Gamma faces contribute,
/// since a smooth u has no interior gradient or Laplacian jumps.
Vector assemble_data_term(const FeSpace& space, const CauchyProblem& problem, double gamma_v);

struct BlockSystem {
    SparseMatrix s_v; // n_V x n_V
    SparseMatrix a;   // n_W x n_V
    SparseMatrix s_w; // n_W x n_W
    Vector load;      // n_W
    Vector data;      // n_V
    double gamma_v{0.0};
    double gamma_w{0.0};
    SwVariant variant{SwVariant::Jump};
};

BlockSystem assemble_blocks(const FeSpace& v_space, const FeSpace& w_space, const CauchyProblem& problem,
                            SwVariant variant, double gamma_v, double gamma_w);

/// Coordinate-format Matrix Market dump (1-based indices, %.17g values).
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

}  // namespace cauchy

#endif  // CAUCHY_ASSEMBLY_HPP
