#pragma once

#include <functional>
#include <vector>

#include "szegolab/types.hpp"

namespace szegolab {

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

const GaussRule& gauss_legendre(int npts);

/// Adaptive composite Gauss quadrature of f over [a, b]. Interior
/// breakpoints split the initial panels; each panel is bisected until the
/// 15- vs 31-point estimates agree to rel_tol (relative to the running
/// total), up to max_depth levels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints = {}, double rel_tol = 1e-12,
                 int max_depth = 24);

}  // namespace szegolab
