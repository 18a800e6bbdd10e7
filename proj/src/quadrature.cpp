#include "szegolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace szegolab {

const GaussRule& gauss_legendre(int npts) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(npts);
    if (it != cache.end()) return it->second;

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
    for (int k = 1; k < npts; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(npts);
    for (int k = 0; k < npts; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        rule.weights(k) = 2.0 * v0 * v0;
    }
    return cache.emplace(npts, std::move(rule)).first->second;
}

namespace {

double panel(const std::function<double(double)>& f, double a, double b, int npts) {
    const GaussRule& rule = gauss_legendre(npts);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < npts; ++k) s += rule.weights(k) * f(mid + half * rule.nodes(k));
    return half * s;
}

double adapt(const std::function<double(double)>& f, double a, double b, double abs_tol,
             int depth) {
    const double coarse = panel(f, a, b, 15);
    const double fine = panel(f, a, b, 31);
    if (std::abs(fine - coarse) <= abs_tol || depth <= 0) return fine;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * abs_tol, depth - 1) +
           adapt(f, mid, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, double rel_tol, int max_depth) {
    std::vector<double> pts{a};
    for (double s : breakpoints)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    double rough = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) rough += std::abs(panel(f, pts[i], pts[i + 1], 31));
    const double abs_tol = rel_tol * std::max(rough, 1e-300);

    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += adapt(f, pts[i], pts[i + 1],
                       abs_tol * (pts[i + 1] - pts[i]) / (b - a), max_depth);
    return total;
}

}  // namespace szegolab
