#include "szegolab/domain.hpp"

#include <cmath>

namespace szegolab {
namespace {

constexpr double kBumpAmplitude = 0.4;

// C^3 smoothstep 35u^4 - 84u^5 + 70u^6 - 20u^7 on [0,1].
double h7(double u) { return ((( -20 * u + 70) * u - 84) * u + 35) * u * u * u * u; }
double h7p(double u) {
    double v = 1.0 - u;
    return 140.0 * u * u * u * v * v * v;
}
double h7pp(double u) {
    double v = 1.0 - u;
    return 420.0 * u * u * v * v * (1.0 - 2.0 * u);
}

// chi(s): 0 for s <= 1/4, ramps to kBumpAmplitude at s = 1/2, plateau after.
double chi(double s) {
    double u = (s - 0.25) * 4.0;
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kBumpAmplitude;
    return kBumpAmplitude * h7(u);
}
double chi_p(double s) {
    double u = (s - 0.25) * 4.0;
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return kBumpAmplitude * 4.0 * h7p(u);
}
double chi_pp(double s) {
    double u = (s - 0.25) * 4.0;
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return kBumpAmplitude * 16.0 * h7pp(u);
}

}  // namespace

DomainSpec DomainSpec::unit_ball(int n) {
    if (n < 2) throw Error("unsupported-spec", "dimension must be >= 2");
    DomainSpec s;
    s.kind_ = DomainKind::UnitBall;
    s.n_ = n;
    return s;
}

DomainSpec DomainSpec::bumped_ball(double epsilon, int n) {
    if (n != 2) throw Error("unsupported-spec", "bumped-ball is implemented in C^2");
    if (epsilon <= 0.0) throw Error("unsupported-spec", "bumped-ball requires epsilon > 0");
    DomainSpec s;
    s.kind_ = DomainKind::BumpedBall;
    s.n_ = 2;
    s.epsilon_ = epsilon;
    return s;
}

DomainSpec DomainSpec::reinhardt_profile(const Eigen::MatrixXd& coeffs) {
    DomainSpec s;
    s.kind_ = DomainKind::ReinhardtProfile;
    s.n_ = 2;
    s.coeffs_ = coeffs;
    return s;
}

DomainSpec DomainSpec::siegel(int n) {
    if (n < 2) throw Error("unsupported-spec", "dimension must be >= 2");
    DomainSpec s;
    s.kind_ = DomainKind::Siegel;
    s.n_ = n;
    return s;
}

ProfileJet DomainSpec::profile(double s1, double s2) const {
    ProfileJet j;
    switch (kind_) {
        case DomainKind::UnitBall:
            j.value = s1 + s2 - 1.0;
            j.d1 = j.d2 = 1.0;
            return j;
        case DomainKind::BumpedBall:
            j.value = s1 + s2 - 1.0 + epsilon_ * chi(s2);
            j.d1 = 1.0;
            j.d2 = 1.0 + epsilon_ * chi_p(s2);
            j.d22 = epsilon_ * chi_pp(s2);
            return j;
        case DomainKind::ReinhardtProfile: {
            for (int i = 0; i < coeffs_.rows(); ++i)
                for (int k = 0; k < coeffs_.cols(); ++k) {
                    double c = coeffs_(i, k);
                    if (c == 0.0) continue;
                    double p1 = std::pow(s1, i), p2 = std::pow(s2, k);
                    j.value += c * p1 * p2;
                    if (i >= 1) j.d1 += c * i * std::pow(s1, i - 1) * p2;
                    if (k >= 1) j.d2 += c * k * p1 * std::pow(s2, k - 1);
                    if (i >= 2) j.d11 += c * i * (i - 1) * std::pow(s1, i - 2) * p2;
                    if (k >= 2) j.d22 += c * k * (k - 1) * p1 * std::pow(s2, k - 2);
                    if (i >= 1 && k >= 1)
                        j.d12 += c * i * k * std::pow(s1, i - 1) * std::pow(s2, k - 1);
                }
            return j;
        }
        case DomainKind::Siegel:
            throw Error("unsupported-spec", "siegel model has no radial profile");
    }
    throw Error("unsupported-spec", "unknown kind");
}

std::vector<double> DomainSpec::profile_breakpoints() const {
    if (kind_ == DomainKind::BumpedBall) return {0.25, 0.5};
    return {};
}

double DomainSpec::diameter() const {
    if (kind_ == DomainKind::Siegel) return 2.0;
    if (kind_ == DomainKind::ReinhardtProfile) {
        double r = std::max(reinhardt_boundary_radius(*this, 0.0),
                            reinhardt_boundary_radius(*this, kPi / 2));
        return 2.0 * r;
    }
    return 2.0;  // ball and bumped ball (bump only shrinks)
}

DefiningFunctionJet evaluate_jet(const DomainSpec& spec, const CVec& z) {
    const int n = spec.n();
    if (z.size() != n) throw Error("point-outside-chart", "dimension mismatch");
    DefiningFunctionJet jet;
    jet.grad_z = CVec::Zero(n);
    jet.hess_holo = CMat::Zero(n, n);
    jet.hess_mixed = CMat::Zero(n, n);

    if (spec.kind() == DomainKind::Siegel) {
        // r = 2 Re z_n + |'z|^2
        jet.value = 2.0 * z(n - 1).real();
        for (int i = 0; i + 1 < n; ++i) {
            jet.value += std::norm(z(i));
            jet.grad_z(i) = std::conj(z(i));
            jet.hess_mixed(i, i) = 1.0;
        }
        jet.grad_z(n - 1) = 1.0;
        jet.grad_zbar = jet.grad_z.conjugate();
        return jet;
    }

    if (spec.kind() == DomainKind::UnitBall) {
        // r = |z|^2 - 1, any n
        jet.value = z.squaredNorm() - 1.0;
        jet.grad_z = z.conjugate();
        jet.grad_zbar = z;
        jet.hess_mixed = CMat::Identity(n, n);
        return jet;
    }

    // generic C^2 Reinhardt profile: r(z) = rho(|z1|^2, |z2|^2)
    double s1 = std::norm(z(0)), s2 = std::norm(z(1));
    ProfileJet p = spec.profile(s1, s2);
    jet.value = p.value;
    jet.grad_z(0) = p.d1 * std::conj(z(0));
    jet.grad_z(1) = p.d2 * std::conj(z(1));
    jet.grad_zbar = jet.grad_z.conjugate();
    jet.hess_holo(0, 0) = p.d11 * std::conj(z(0)) * std::conj(z(0));
    jet.hess_holo(1, 1) = p.d22 * std::conj(z(1)) * std::conj(z(1));
    jet.hess_holo(0, 1) = jet.hess_holo(1, 0) = p.d12 * std::conj(z(0)) * std::conj(z(1));
    jet.hess_mixed(0, 0) = p.d1 + p.d11 * s1;
    jet.hess_mixed(1, 1) = p.d2 + p.d22 * s2;
    jet.hess_mixed(0, 1) = p.d12 * std::conj(z(0)) * z(1);
    jet.hess_mixed(1, 0) = std::conj(jet.hess_mixed(0, 1));
    return jet;
}

double levi_form(const DefiningFunctionJet& jet, const CVec& X) {
    return (X.adjoint() * jet.hess_mixed * X)(0).real();
}

CMat tangent_basis(const CVec& nu) {
    const int n = static_cast<int>(nu.size());
    // orthonormal complement of nu, deterministic: drop the axis most
    // parallel to nu, Gram-Schmidt the rest.
    int drop = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(nu(i)) > std::abs(nu(drop))) drop = i;
    CMat B(n, n - 1);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (i == drop) continue;
        CVec v = unit_vector(n, i);
        v -= hdot(v, nu) * nu;
        for (int c = 0; c < col; ++c) v -= hdot(v, B.col(c)) * B.col(c);
        B.col(col++) = v / v.norm();
    }
    return B;
}

double levi_min_check(const DomainSpec& spec, const std::vector<CVec>& grid) {
    if (grid.empty()) throw Error("nonsmooth-point", "empty grid");
    double best = std::numeric_limits<double>::infinity();
    for (const CVec& z : grid) {
        DefiningFunctionJet jet = evaluate_jet(spec, z);
        double gn = jet.grad_zbar.norm();
        if (gn < 1e-12) throw Error("nonsmooth-point", "vanishing gradient on grid");
        CMat B = tangent_basis(jet.grad_zbar / gn);
        CMat L = B.adjoint() * jet.hess_mixed * B;
        Eigen::SelfAdjointEigenSolver<CMat> es(L);
        best = std::min(best, es.eigenvalues().minCoeff());
    }
    return best;
}

std::optional<double> bumped_ball_epsilon_max(double lo, double hi, int grid_size, double tol) {
    auto levi_min = [&](double eps) {
        DomainSpec s = DomainSpec::bumped_ball(eps);
        std::vector<CVec> grid;
        grid.reserve(grid_size);
        for (int k = 0; k < grid_size; ++k) {
            double t = (k + 0.5) * (kPi / 2) / grid_size;
            grid.push_back(reinhardt_boundary_point(s, t));
        }
        return levi_min_check(s, grid);
    };
    double flo = levi_min(lo), fhi = levi_min(hi);
    if (flo <= 0.0) throw Error("unsupported-spec", "lower bracket already degenerate");
    if (fhi > 0.0) return std::nullopt;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (levi_min(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double reinhardt_boundary_radius(const DomainSpec& spec, double t) {
    if (!spec.is_reinhardt()) throw Error("unsupported-spec", "not a Reinhardt spec");
    double c2 = std::cos(t) * std::cos(t), s2 = std::sin(t) * std::sin(t);
    auto f = [&](double R) { return spec.profile(R * R * c2, R * R * s2).value; };
    double lo = 0.0, hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw Error("root-finding-failure", "profile does not reach zero");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CVec reinhardt_boundary_point(const DomainSpec& spec, double t) {
    double R = reinhardt_boundary_radius(spec, t);
    CVec z(2);
    z(0) = R * std::cos(t);
    z(1) = R * std::sin(t);
    return z;
}

namespace {

// real-linear map dz -> A dz + B conj(dz), realified to 2n x 2n
Eigen::MatrixXd realify(const CMat& A, const CMat& B) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd M(2 * n, 2 * n);
    M.topLeftCorner(n, n) = (A + B).real();
    M.topRightCorner(n, n) = -(A - B).imag();
    M.bottomLeftCorner(n, n) = (A + B).imag();
    M.bottomRightCorner(n, n) = (A - B).real();
    return M;
}

CVec initial_projection(const DomainSpec& spec, const CVec& z) {
    const int n = spec.n();
    if (spec.kind() == DomainKind::Siegel) {
        CVec p = z;
        double s = z.head(n - 1).squaredNorm();
        p(n - 1) = cplx(-0.5 * s, z(n - 1).imag());
        return p;
    }
    // radial scaling onto the boundary
    auto f = [&](double s) { return evaluate_jet(spec, s * z).value; };
    double lo = 1.0, hi = 2.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e8) throw Error("no-convergence", "radial bracket failed");
    }
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) * z;
}

}  // namespace

BoundaryFrame nearest_boundary_point(const DomainSpec& spec, const CVec& z) {
    const int n = spec.n();
    DefiningFunctionJet at_z = evaluate_jet(spec, z);
    if (at_z.value >= 0.0) throw Error("point-outside-chart", "z is not interior");

    CVec p = initial_projection(spec, z);
    double t = -(z - p).norm() / (2.0 * evaluate_jet(spec, p).grad_zbar.norm());

    auto residual = [&](const CVec& pp, double tt, const DefiningFunctionJet& jet) {
        CVec rvec = z - pp - tt * 2.0 * jet.grad_zbar;
        Eigen::VectorXd F(2 * n + 1);
        F.head(n) = rvec.real();
        F.segment(n, n) = rvec.imag();
        F(2 * n) = jet.value;
        return F;
    };

    DefiningFunctionJet jet = evaluate_jet(spec, p);
    Eigen::VectorXd F = residual(p, t, jet);
    for (int it = 0; it < 50 && F.norm() >= 1e-12; ++it) {
        // d(2 grad_zbar)_i = 2 sum_j Hm(j,i) dz_j + conj(Hh(i,j)) dzbar_j
        CMat A = -2.0 * t * jet.hess_mixed.transpose();
        CMat B = -2.0 * t * jet.hess_holo.conjugate();
        A -= CMat::Identity(n, n);  // -dp term
        Eigen::MatrixXd J(2 * n + 1, 2 * n + 1);
        J.topLeftCorner(2 * n, 2 * n) = realify(A, B);
        CVec g2 = 2.0 * jet.grad_zbar;
        J.block(0, 2 * n, n, 1) = -g2.real();
        J.block(n, 2 * n, n, 1) = -g2.imag();
        // dr = 2 Re(grad_z . dz): A = grad_z^T row, B = grad_zbar^T
        Eigen::RowVectorXd grow(2 * n + 1);
        grow.head(n) = 2.0 * jet.grad_z.real().transpose();
        grow.segment(n, n) = -2.0 * jet.grad_z.imag().transpose();
        grow(2 * n) = 0.0;
        J.row(2 * n) = grow;

        Eigen::VectorXd step = J.partialPivLu().solve(-F);
        double lambda = 1.0;
        for (int half = 0; half < 30; ++half) {
            CVec pn(n);
            for (int i = 0; i < n; ++i)
                pn(i) = p(i) + cplx(lambda * step(i), lambda * step(n + i));
            double tn = t + lambda * step(2 * n);
            DefiningFunctionJet jn = evaluate_jet(spec, pn);
            Eigen::VectorXd Fn = residual(pn, tn, jn);
            if (Fn.norm() < F.norm() || lambda < 1e-6) {
                p = pn;
                t = tn;
                jet = jn;
                F = Fn;
                break;
            }
            lambda *= 0.5;
        }
    }
    if (F.norm() >= 1e-12) throw Error("no-convergence", "Newton projection failed");

    BoundaryFrame frame;
    frame.p = p;
    double gn = jet.grad_zbar.norm();
    frame.nu = jet.grad_zbar / gn;
    frame.delta = (z - p).norm();
    frame.z = z;
    if (frame.delta >= 0.2 * spec.diameter())
        throw Error("ambiguous-projection", "z too far inside the tubular neighbourhood");
    return frame;
}

std::pair<CVec, CVec> split_tangential_normal(const BoundaryFrame& frame, const CVec& X) {
    CVec XN = hdot(X, frame.nu) * frame.nu;
    return {X - XN, XN};
}

ScalarJet product_jet(const ScalarJet& h, const DefiningFunctionJet& r) {
    ScalarJet out;
    const int n = r.n();
    out.value = h.value * r.value;
    out.grad_z = h.value * r.grad_z + r.value * h.grad_z;
    out.grad_zbar = out.grad_z.conjugate();
    out.hess_holo = h.value * r.hess_holo + r.value * h.hess_holo +
                    h.grad_z * r.grad_z.transpose() + r.grad_z * h.grad_z.transpose();
    out.hess_mixed = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.hess_mixed(i, j) = h.value * r.hess_mixed(i, j) + r.value * h.hess_mixed(i, j) +
                                   h.grad_z(i) * std::conj(r.grad_z(j)) +
                                   r.grad_z(i) * std::conj(h.grad_z(j));
    return out;
}

ScalarJet factor_one(const CVec& z) {
    ScalarJet j;
    const int n = static_cast<int>(z.size());
    j.value = 1.0;
    j.grad_z = CVec::Zero(n);
    j.grad_zbar = CVec::Zero(n);
    j.hess_holo = CMat::Zero(n, n);
    j.hess_mixed = CMat::Zero(n, n);
    return j;
}

ScalarJet factor_half_s1(const CVec& z) {
    ScalarJet j = factor_one(z);
    j.value = 1.0 + 0.5 * std::norm(z(0));
    j.grad_z(0) = 0.5 * std::conj(z(0));
    j.grad_zbar = j.grad_z.conjugate();
    j.hess_mixed(0, 0) = 0.5;
    return j;
}

ScalarJet factor_exp_re(const CVec& z) {
    // exp(Re z2) = exp((z2 + zbar2)/2)
    ScalarJet j = factor_one(z);
    double v = std::exp(z(1).real());
    j.value = v;
    j.grad_z(1) = 0.5 * v;
    j.grad_zbar = j.grad_z.conjugate();
    j.hess_holo(1, 1) = 0.25 * v;
    j.hess_mixed(1, 1) = 0.25 * v;
    return j;
}

}  // namespace szegolab
