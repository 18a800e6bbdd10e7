#pragma once

#include <functional>

#include "szegolab/kernels.hpp"

namespace szegolab {

/// Kernel-with-derivatives interface the metric layer differentiates
/// through: partial(z, w, z_idx, wbar_idx) returns the mixed kernel
/// derivative; tail (optional) bounds the truncation error on |z| <= rho.
struct KernelEvaluator {
    int n = 2;
    double c_n = 1.0;
    std::function<cplx(const CVec&, const CVec&, const std::vector<int>&,
                       const std::vector<int>&)>
        partial;
    std::function<double(double)> tail;
    double tail_rel_guard = 1e-8;
};

KernelEvaluator exact_ball_evaluator(KernelKind kind, int n, double c_n = 1.0);
KernelEvaluator series_evaluator(DiagonalKernelSeries series);

/// Tail bound at |z| (0 for exact evaluators).
double evaluator_tail_bound(const KernelEvaluator& ev, const CVec& z);

/// Derivatives of log S(z, z) through mixed order (2, 2), assembled from
/// kernel derivatives by the moment-to-cumulant recursion.
/// Index layout: d21[j](i, k) = d^2/dz_i dz_k dbar_j log S,
/// d22[j * n + l](i, k) = d^2/dz_i dz_k d^2bar/dbar_j dbar_l log S.
struct LogKernelJet {
    CVec z;
    double S = 0.0;
    double tail_bound = 0.0;
    CVec d10;
    CMat d20;
    CMat d11;  // the metric tensor g_{i jbar}
    std::vector<CMat> d21;
    std::vector<CMat> d22;

    int n() const { return static_cast<int>(z.size()); }
};

/// order 2 fills the whole jet; order 1 stops after d11 (enough for the
/// metric tensor) and leaves d21/d22 empty.
LogKernelJet log_kernel_jet(const KernelEvaluator& ev, const CVec& z, int order = 2);

struct MetricTensor {
    CVec z;
    CMat G;
    CMat Ginv;
    double g = 0.0;  // det G
    double S = 0.0;
    double tail_bound = 0.0;
};

MetricTensor metric_tensor(const LogKernelJet& jet);

/// tau(z, X) = sqrt(X^t G conj(X)).
double metric_length(const MetricTensor& tensor, const CVec& X);

/// beta = det G / S^{(n+1)/n}.
double beta_invariant(const MetricTensor& tensor, int n);

/// Holomorphic sectional curvature R(z, X): contraction of
/// -d^2 g_{b abar}/dz_c dbar_d + g^{nu mubar} (dg_{b mubar}/dz_c)(dg_{nu abar}/dbar_d)
/// against X, normalized by (X^t G conj(X))^2.
double sectional_curvature(const LogKernelJet& jet, const CVec& X);

struct RicciResult {
    double value = 0.0;
    CMat tensor;              // Ric_{a bbar} = -dd log det G
    double residual = 0.0;    // Richardson step-halving residual
    double step = 0.0;
    bool precision_warning = false;
};

/// Ricci quadratic form by central finite differences of log det G with
/// complex-step polarization and Richardson extrapolation; the step is
/// halved until residual < 1e-7 or step < 1e-5.
RicciResult ricci_curvature_detail(const KernelEvaluator& ev, const CVec& z, const CVec& X,
                                   double initial_step = 1e-3);
double ricci_curvature(const KernelEvaluator& ev, const CVec& z, const CVec& X,
                       double initial_step = 1e-3);

struct CurvatureReport {
    CVec z;
    CVec X;
    double tau = 0.0;
    double g = 0.0;
    double beta = 0.0;
    double R = 0.0;
    double Ric = 0.0;
    double tail_bound = 0.0;
};

CurvatureReport curvature_report(const KernelEvaluator& ev, const CVec& z, const CVec& X);

/// Relative residual of J^t G(F z) conj(J) = G(z) for a ball automorphism.
double metric_pullback_residual(const KernelEvaluator& ev, const BallAutomorphism& F,
                                const CVec& z);

}  // namespace szegolab
