#include "cauchy/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cauchy {

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (m < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    nodes.assign(m, 0.0);
    weights.assign(m, 0.0);
    if (m == 1) {
        weights[0] = 2.0;
        return;
    }
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            // P_m(x) = p1, P_{m-1}(x) = p0
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if (m % 2 == 1)
        nodes[m / 2] = 0.0;
}

namespace {

QuadratureRule make_segment(int degree)
{
    const int m = degree / 2 + 1;
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(m, x, w);
    QuadratureRule rule;
    rule.degree = degree;
    for (int i = 0; i < m; ++i) {
        rule.points.push_back({0.5 * (x[i] + 1.0), 0.0});
        rule.weights.push_back(0.5 * w[i]);
    }
    return rule;
}

// Collapsed (Duffy) tensor Gauss rule: xi = s, eta = (1 - s) t. The map
// Jacobian (1 - s) raises the degree in s by one.
QuadratureRule make_collapsed(int degree)
{
    const int m = (degree + 3) / 2;
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(m, x, w);
    QuadratureRule rule;
    rule.degree = degree;
    for (int i = 0; i < m; ++i) {
        const double s = 0.5 * (x[i] + 1.0);
        for (int j = 0; j < m; ++j) {
            const double t = 0.5 * (x[j] + 1.0);
            rule.points.push_back({s, (1.0 - s) * t});
            rule.weights.push_back(0.25 * w[i] * w[j] * (1.0 - s));
        }
    }
    return rule;
}

QuadratureRule make_triangle(int degree)
{
    QuadratureRule rule;
    rule.degree = degree;
    if (degree <= 1) {
        rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
        rule.weights = {0.5};
    } else if (degree == 2) {
        rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
        rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    } else {
        rule = make_collapsed(degree);
    }
    return rule;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree)
{
    static const auto rules = [] {
        std::array<QuadratureRule, 9> r;
        for (int d = 0; d <= 8; ++d)
            r[d] = make_triangle(d);
        return r;
    }();
    if (degree < 0 || degree > 8)
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
    return rules[degree];
}

const QuadratureRule& segment_rule(int degree)
{
    static const auto rules = [] {
        std::array<QuadratureRule, 10> r;
        for (int d = 0; d <= 9; ++d)
            r[d] = make_segment(d);
        return r;
    }();
    if (degree < 0 || degree > 9)
        throw std::invalid_argument("segment_rule: unsupported degree " + std::to_string(degree));
    return rules[degree];
}

}  // namespace cauchy
