#include "szegolab/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace szegolab {

namespace {

// Pushforward of a defining-function jet under the affine substitution
// z = c + M w (jet of r-tilde(w) = r(c + M w) at w with z = c + M w).
DefiningFunctionJet affine_pushforward(const DefiningFunctionJet& jet, const CMat& M) {
    DefiningFunctionJet out;
    out.value = jet.value;
    out.grad_z = M.transpose() * jet.grad_z;
    out.grad_zbar = out.grad_z.conjugate();
    out.hess_holo = M.transpose() * jet.hess_holo * M;
    out.hess_mixed = M.transpose() * jet.hess_mixed * M.conjugate();
    return out;
}

CMat phase_fixed_eigenvectors(const CMat& B, Eigen::VectorXd& lambda) {
    Eigen::SelfAdjointEigenSolver<CMat> es(B);
    if (es.info() != Eigen::Success)
        throw Error("degenerate-levi-block", "Levi block eigendecomposition failed");
    const int m = static_cast<int>(B.rows());
    // descending eigenvalues, phase fixed so the first sizable entry of each
    // eigenvector is real positive (deterministic output)
    lambda.resize(m);
    CMat U(m, m);
    for (int k = 0; k < m; ++k) {
        lambda(k) = es.eigenvalues()(m - 1 - k);
        CVec v = es.eigenvectors().col(m - 1 - k);
        for (int i = 0; i < m; ++i) {
            if (std::abs(v(i)) > 1e-9) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        U.col(k) = v;
    }
    return U;
}

}  // namespace

AffineNormalization build_p_matrix(const DefiningFunctionJet& jet, const CVec& p) {
    const int n = jet.n();
    if (std::abs(jet.grad_z(n - 1)) < 1e-14)
        throw Error("normal-component-vanishes", "dr/dz_n vanishes at the base point");
    AffineNormalization phi1;
    phi1.p = p;
    phi1.P = CMat::Zero(n, n);
    const cplx rn_bar = std::conj(jet.grad_z(n - 1));  // dr/dzbar_n
    for (int i = 0; i < n - 1; ++i) {
        phi1.P(i, i) = rn_bar;
        phi1.P(i, n - 1) = -std::conj(jet.grad_z(i));  // -dr/dzbar_i
        phi1.P(n - 1, i) = jet.grad_z(i);
    }
    phi1.P(n - 1, n - 1) = jet.grad_z(n - 1);
    return phi1;
}

SecondOrderCoeffs second_order_coeffs(const DefiningFunctionJet& jet,
                                      const AffineNormalization& phi1) {
    const CMat Pinv = phi1.P.inverse();
    const DefiningFunctionJet pushed = affine_pushforward(jet, Pinv);
    SecondOrderCoeffs out;
    out.a1 = 0.5 * (pushed.hess_holo + pushed.hess_holo.transpose());
    out.b1 = 0.5 * (pushed.hess_mixed + pushed.hess_mixed.adjoint());
    const int n = jet.n();
    Eigen::SelfAdjointEigenSolver<CMat> es(out.b1.topLeftCorner(n - 1, n - 1));
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw Error("degenerate-levi-block", "tangential Levi block is not positive definite");
    return out;
}

CVec ScalingMap::operator()(const CVec& z) const {
    const int m = n();
    CVec w = P * (chartV * (z - frame.p));
    cplx quad = 0.0;
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < m - 1; ++j) quad += shear(i, j) * w(i) * w(j);
    w(m - 1) += quad;
    w.head(m - 1) = (A * w.head(m - 1)).eval();
    w.head(m - 1) /= std::sqrt(eta);
    w(m - 1) /= eta;
    return w;
}

CVec ScalingMap::inverse(const CVec& w) const {
    const int m = n();
    CVec v = w;
    v.head(m - 1) *= std::sqrt(eta);
    v(m - 1) *= eta;
    v.head(m - 1) = (A.inverse() * v.head(m - 1)).eval();
    cplx quad = 0.0;
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < m - 1; ++j) quad += shear(i, j) * v(i) * v(j);
    v(m - 1) -= quad;
    return frame.p + chartV.adjoint() * (P.inverse() * v);
}

CMat ScalingMap::derivative(const CVec& z) const {
    const int m = n();
    const CVec w1 = P * (chartV * (z - frame.p));
    CMat J2 = CMat::Identity(m, m);
    for (int g = 0; g < m - 1; ++g) {
        cplx s = 0.0;
        for (int mu = 0; mu < m - 1; ++mu) s += (shear(mu, g) + shear(g, mu)) * w1(mu);
        J2(m - 1, g) = s;
    }
    CMat J3 = CMat::Identity(m, m);
    J3.topLeftCorner(m - 1, m - 1) = A;
    CMat T = CMat::Identity(m, m) / std::sqrt(eta);
    T(m - 1, m - 1) = 1.0 / eta;
    return T * J3 * J2 * P * chartV;
}

ScalingMap build_scaling(const DomainSpec& spec, const CVec& zeta) {
    const int n = spec.n();
    ScalingMap map;
    map.spec = spec;
    map.frame = nearest_boundary_point(spec, zeta);

    // rigid chart: p -> 0, outward normal -> ('0, 1)
    CMat basis(n, n);
    basis.leftCols(n - 1) = tangent_basis(map.frame.nu);
    basis.col(n - 1) = map.frame.nu;
    map.chartV = basis.adjoint();

    const DefiningFunctionJet jet = evaluate_jet(spec, map.frame.p);
    const DefiningFunctionJet chart_jet = affine_pushforward(jet, map.chartV.adjoint());
    const AffineNormalization phi1 = build_p_matrix(chart_jet, CVec::Zero(n));
    map.P = phi1.P;
    const SecondOrderCoeffs coeffs = second_order_coeffs(chart_jet, phi1);
    map.shear = coeffs.a1.topLeftCorner(n - 1, n - 1);

    Eigen::VectorXd lambda;
    const CMat U = phase_fixed_eigenvectors(coeffs.b1.topLeftCorner(n - 1, n - 1), lambda);
    // A with A^t B conj(A) = I for the Levi block B = U diag(lambda) U^*
    // A multiplies 'z in phi3; A = diag(sqrt(lambda)) U^t makes the Levi
    // block of the image domain the identity ((A^{-1})^t B conj(A^{-1}) = I)
    map.A = lambda.cwiseSqrt().asDiagonal() * U.transpose();

    map.eta = map.frame.delta * jet.grad_zbar.norm();

    // derivative of phi3 o phi2 o phi1 o chart at the anchor; phi2's
    // derivative there is the identity since the anchor sits on the axis
    CMat J3 = CMat::Identity(n, n);
    J3.topLeftCorner(n - 1, n - 1) = map.A;
    map.Q = J3 * map.P * map.chartV;
    return map;
}

CVec cayley(const CVec& z) {
    // involutive form: denominators z_n - 1 so that H o H = id and
    // H'(b*) = -diag(1/sqrt(2), ..., 1/2)
    const int n = static_cast<int>(z.size());
    const cplx d = z(n - 1) - 1.0;
    if (std::abs(d) < 1e-14) throw Error("pole-proximity", "Cayley pole at z_n = 1");
    CVec w(n);
    w.head(n - 1) = std::sqrt(2.0) * z.head(n - 1) / d;
    w(n - 1) = (1.0 + z(n - 1)) / d;
    return w;
}

CMat cayley_jacobian(const CVec& z) {
    const int n = static_cast<int>(z.size());
    const cplx d = z(n - 1) - 1.0;
    if (std::abs(d) < 1e-14) throw Error("pole-proximity", "Cayley pole at z_n = 1");
    CMat J = CMat::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) {
        J(i, i) = std::sqrt(2.0) / d;
        J(i, n - 1) = -std::sqrt(2.0) * z(i) / (d * d);
    }
    J(n - 1, n - 1) = -2.0 / (d * d);
    return J;
}

std::vector<CVec> polydisc_grid(int n, double tangential_radius, double normal_radius,
                                int points_per_axis) {
    // real cross-section grid plus rotated copies; enough coverage for a
    // max-residual probe without an n-cube of points
    std::vector<CVec> grid;
    const int m = points_per_axis;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int ph = 0; ph < 4; ++ph) {
                const double t = tangential_radius * (2.0 * i / (m - 1) - 1.0);
                const double s = normal_radius * (2.0 * j / (m - 1) - 1.0);
                CVec w = CVec::Zero(n);
                const cplx phase = std::polar(1.0, kPi * ph / 4.0);
                for (int k = 0; k < n - 1; ++k) w(k) = t * phase / std::sqrt(n - 1.0);
                w(n - 1) = s * phase;
                grid.push_back(w);
            }
    return grid;
}

double scaled_defining_residual(const DomainSpec& spec, const ScalingMap& map,
                                const std::vector<CVec>& grid) {
    double worst = 0.0;
    for (const CVec& w : grid) {
        const CVec z = map.inverse(w);
        const double r = evaluate_jet(spec, z).value;
        const double model =
            2.0 * w(w.size() - 1).real() + w.head(w.size() - 1).squaredNorm();
        worst = std::max(worst, std::abs(r / map.eta - model));
    }
    return worst;
}

std::vector<ScalingReport> run_scaling_suite(const DomainSpec& spec, const CVec& p0,
                                             const std::vector<double>& deltas) {
    const DefiningFunctionJet jet = evaluate_jet(spec, p0);
    const CVec nu = jet.grad_zbar / jet.grad_zbar.norm();
    const std::vector<CVec> grid = polydisc_grid(spec.n(), 1.0, 1.0, 9);

    std::vector<ScalingReport> out;
    int j = 0;
    for (double delta : deltas) {
        const ScalingMap map = build_scaling(spec, p0 - delta * nu);
        ScalingReport row;
        row.j = j++;
        row.delta = delta;
        row.eta = map.eta;
        row.residual = scaled_defining_residual(spec, map, grid);
        row.q_deviation = (map.Q - CMat::Identity(spec.n(), spec.n())).operatorNorm();
        out.push_back(row);
    }
    return out;
}

}  // namespace szegolab
