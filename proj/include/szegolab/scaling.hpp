#pragma once

#include <vector>

#include "szegolab/domain.hpp"

namespace szegolab {

/// phi1: w = P (z - p) with the bordered-gradient matrix that sends the
/// gradient direction to ('0, |grad|^2).
struct AffineNormalization {
    CVec p;
    CMat P;

    CVec operator()(const CVec& z) const { return P * (z - p); }
};

AffineNormalization build_p_matrix(const DefiningFunctionJet& jet, const CVec& p);

/// Second-order data of r after phi1: a1 symmetric (shear coefficients),
/// b1 Hermitian with positive definite tangential block (Levi block).
struct SecondOrderCoeffs {
    CMat a1;
    CMat b1;
};

SecondOrderCoeffs second_order_coeffs(const DefiningFunctionJet& jet,
                                      const AffineNormalization& phi1);

/// Composite scaling map S = T o phi3 o phi2 o phi1 o chart built at an
/// interior anchor zeta: chart is the rigid motion w = V (z - p) sending the
/// nearest boundary point p to 0 and the outward normal to ('0, 1); phi2 is
/// the tangential shear; phi3 = (A 'z, z_n) normalizes the Levi block; T is
/// the anisotropic dilation by eta = delta * |grad r(p)|.
struct ScalingMap {
    DomainSpec spec;
    BoundaryFrame frame;  // p, nu, delta, zeta
    CMat chartV;
    CMat P;      // phi1 matrix in chart coordinates
    CMat shear;  // tangential (n-1) x (n-1) block of a1
    CMat A;      // phi3 stretch
    double eta = 0.0;
    CMat Q;  // derivative of phi3 o phi2 o phi1 o chart at the anchor

    int n() const { return static_cast<int>(frame.p.size()); }
    CVec operator()(const CVec& z) const;
    CVec inverse(const CVec& w) const;
    CMat derivative(const CVec& z) const;
};

ScalingMap build_scaling(const DomainSpec& spec, const CVec& zeta);

/// Cayley transform H('z, z_n) = (sqrt(2) 'z / (z_n - 1), (1 + z_n)/(z_n - 1)),
/// an involution mapping the unit ball onto {2 Re z_n + |'z|^2 < 0}, H(b*) = 0
/// for b* = ('0, -1).
CVec cayley(const CVec& z);
CMat cayley_jacobian(const CVec& z);

/// Grid on the closed polydisc {|'w| <= tangential_radius, |w_n| <= normal_radius}
/// used by the residual checks.
std::vector<CVec> polydisc_grid(int n, double tangential_radius, double normal_radius,
                                int points_per_axis);

/// max over the grid of |r(S^{-1}(w))/eta - (2 Re w_n + |'w|^2)|.
double scaled_defining_residual(const DomainSpec& spec, const ScalingMap& map,
                                const std::vector<CVec>& grid);

struct ScalingReport {
    int j = 0;
    double delta = 0.0;
    double eta = 0.0;
    double residual = 0.0;
    double q_deviation = 0.0;  // opnorm(Q - I)
};

/// One scaling build per delta along the inward normal ray at p0.
std::vector<ScalingReport> run_scaling_suite(const DomainSpec& spec, const CVec& p0,
                                             const std::vector<double>& deltas);

}  // namespace szegolab
