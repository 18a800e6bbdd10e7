#pragma once

#include <optional>
#include <vector>

#include "szegolab/types.hpp"

namespace szegolab {

enum class DomainKind { UnitBall, BumpedBall, ReinhardtProfile, Siegel };

/// Second-order derivative data of a defining function r at a point.
/// Conventions: grad_z(i) = dr/dz_i, grad_zbar = conj(grad_z),
/// hess_holo(i,j) = d2r/dz_i dz_j, hess_mixed(i,j) = d2r/dz_i dzbar_j.
struct DefiningFunctionJet {
    double value = 0.0;
    CVec grad_z;
    CVec grad_zbar;
    CMat hess_holo;
    CMat hess_mixed;

    int n() const { return static_cast<int>(grad_z.size()); }
};

/// Nearest-boundary-point data for an interior point z = p - delta*nu.
struct BoundaryFrame {
    CVec p;       // base point on the boundary
    CVec nu;      // unit outward complex normal, grad_zbar(p)/|grad_zbar(p)|
    double delta = 0.0;
    CVec z;       // the interior point the frame was built for
};

/// Value and first two derivatives of a radial profile rho(s1, s2),
/// s_i = |z_i|^2. Only meaningful for complete Reinhardt specs in C^2.
struct ProfileJet {
    double value = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;
};

class DomainSpec {
public:
    static DomainSpec unit_ball(int n = 2);
    static DomainSpec bumped_ball(double epsilon, int n = 2);
    /// rho(s1,s2) = sum coeffs(i,j) s1^i s2^j; must vanish on a curve with
    /// positive partials there.
    static DomainSpec reinhardt_profile(const Eigen::MatrixXd& coeffs);
    static DomainSpec siegel(int n = 2);

    DomainKind kind() const { return kind_; }
    int n() const { return n_; }
    double epsilon() const { return epsilon_; }
    const Eigen::MatrixXd& profile_coeffs() const { return coeffs_; }

    bool is_reinhardt() const {
        return kind_ == DomainKind::UnitBall || kind_ == DomainKind::BumpedBall ||
               kind_ == DomainKind::ReinhardtProfile;
    }
    bool is_bounded() const { return kind_ != DomainKind::Siegel; }

    ProfileJet profile(double s1, double s2) const;
    /// s-values of reduced smoothness of the profile in s2 (quadrature panel breaks).
    std::vector<double> profile_breakpoints() const;
    /// Euclidean diameter (model scale 2 for the Siegel domain).
    double diameter() const;

    bool operator==(const DomainSpec&) const = default;

private:
    DomainKind kind_ = DomainKind::UnitBall;
    int n_ = 2;
    double epsilon_ = 0.0;
    Eigen::MatrixXd coeffs_;  // reinhardt-profile coefficients
};

/// Analytic derivative jet of the defining function; no finite differences.
DefiningFunctionJet evaluate_jet(const DomainSpec& spec, const CVec& z);

/// X* hess_mixed X (real by Hermitian symmetry).
double levi_form(const DefiningFunctionJet& jet, const CVec& X);

/// Minimum over the grid of the smallest eigenvalue of hess_mixed restricted
/// to the complex tangent space. Positive return certifies strict
/// pseudoconvexity on the sample.
double levi_min_check(const DomainSpec& spec, const std::vector<CVec>& grid);

/// First epsilon in (lo, hi) where the bumped-ball Levi minimum reaches zero,
/// located by bisection; returns nullopt when the whole bracket stays positive.
std::optional<double> bumped_ball_epsilon_max(double lo, double hi, int grid_size = 400,
                                              double tol = 1e-6);

/// Newton projection of an interior point onto the boundary.
BoundaryFrame nearest_boundary_point(const DomainSpec& spec, const CVec& z);

/// X = X_H + X_N with X_N = <X, nu> nu.
std::pair<CVec, CVec> split_tangential_normal(const BoundaryFrame& frame, const CVec& X);

/// Boundary point of a Reinhardt spec at polar parameter t in [0, pi/2]:
/// z = (R cos t, R sin t) with rho(|z1|^2, |z2|^2) = 0.
CVec reinhardt_boundary_point(const DomainSpec& spec, double t);

/// Radius R > 0 with rho((R cos t)^2, (R sin t)^2) = 0.
double reinhardt_boundary_radius(const DomainSpec& spec, double t);

/// Columns form an orthonormal basis of the complex tangent space at nu.
CMat tangent_basis(const CVec& nu);

/// Scalar factor jet (value/gradients/Hessians) used by the
/// defining-function-independence checks; same layout as DefiningFunctionJet.
using ScalarJet = DefiningFunctionJet;

/// Jet of the product h*r from jets of h and r at the same point.
ScalarJet product_jet(const ScalarJet& h, const DefiningFunctionJet& r);

/// Built-in positive smooth factors with exact jets.
ScalarJet factor_one(const CVec& z);
ScalarJet factor_half_s1(const CVec& z);   // 1 + |z1|^2/2
ScalarJet factor_exp_re(const CVec& z);    // exp(Re z2)

}  // namespace szegolab
