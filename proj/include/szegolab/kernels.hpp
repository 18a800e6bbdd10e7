#pragma once

#include <iosfwd>
#include <random>

#include "szegolab/hardy.hpp"

namespace szegolab {

enum class KernelKind { Szego, Bergman };

/// Truncated diagonal kernel series on a complete Reinhardt domain in C^2:
/// K(z, w) = sum_{|alpha| <= D} c_alpha z^alpha conj(w)^alpha with
/// c_alpha = 1 / ||z^alpha||^2 in the requested space.
struct DiagonalKernelSeries {
    KernelKind kind = KernelKind::Szego;
    DomainSpec spec;
    int degree = 0;
    double c_n = 1.0;
    NormTable table;  // shared squared-norm table (both columns filled)

    double coefficient(int a1, int a2) const;
};

DiagonalKernelSeries build_series(const DomainSpec& spec, KernelKind kind, int degree,
                                  double c_n = 1.0, int resolution = 32,
                                  unsigned threads = 1);
/// Both kinds from one shared norm table.
std::pair<DiagonalKernelSeries, DiagonalKernelSeries> build_series_pair(
    const DomainSpec& spec, int degree, double c_n = 1.0, int resolution = 32,
    unsigned threads = 1);

DiagonalKernelSeries series_from_table(const DomainSpec& spec, KernelKind kind,
                                       NormTable table);

cplx eval_kernel(const DiagonalKernelSeries& series, const CVec& z, const CVec& w);

/// Mixed kernel partial: apply z-derivatives d/dz_i for i in z_idx and
/// w-bar derivatives for i in wbar_idx (each index may repeat).
cplx eval_kernel_partial(const DiagonalKernelSeries& series, const CVec& z, const CVec& w,
                         const std::vector<int>& z_idx, const std::vector<int>& wbar_idx);

/// Closed-form unit-ball kernels: Szego (n-1)!/(c_n pi^n (1 - <z,w>)^n),
/// Bergman n!/(pi^n (1 - <z,w>)^{n+1}).
cplx eval_exact_ball(KernelKind kind, int n, double c_n, const CVec& z, const CVec& w);
cplx eval_exact_ball_partial(KernelKind kind, int n, double c_n, const CVec& z,
                             const CVec& w, const std::vector<int>& z_idx,
                             const std::vector<int>& wbar_idx);

/// S(z,z)^{n+1} / K(z,z)^n.
double sk_invariant(const DiagonalKernelSeries& szego, const DiagonalKernelSeries& bergman,
                    const CVec& z);
double sk_invariant_exact_ball(int n, double c_n, const CVec& z);

/// Upper bound for |truncation tail| of the diagonal series on |z|,|w| <= rho,
/// from a geometric majorant fitted to the top coefficient degrees.
double truncation_tail_bound(const DiagonalKernelSeries& series, double rho);

/// z -> U * phi_a(z) with phi_a the standard ball involution swapping 0 and a.
struct BallAutomorphism {
    CVec a;
    CMat unitary;

    int n() const { return static_cast<int>(a.size()); }
    CVec operator()(const CVec& z) const;
    CMat complex_jacobian(const CVec& z) const;
    cplx det_jacobian(const CVec& z) const;
    /// Holomorphic branch of (det J)^{n/(n+1)} (constant principal power of
    /// the constant factor times an integer power of 1 - <z,a>).
    cplx det_jacobian_branch(const CVec& z) const;
    BallAutomorphism inverse() const;
};

BallAutomorphism make_ball_automorphism(const CVec& a, const CMat& unitary);
BallAutomorphism random_ball_automorphism(int n, std::mt19937& rng, double a_cap = 0.7);

/// Relative residual of the kernel transformation law
/// S(z,w) = b(z) * S(F z, F w) * conj(b(w)) with b = (det J)^{n/(n+1)}
/// (Szego) or b = det J (Bergman), both sides exact ball kernels.
double transform_residual_exact(KernelKind kind, double c_n, const BallAutomorphism& F,
                                const CVec& z, const CVec& w);
/// Same law with the truncated series on the left and the exact kernel on
/// the right.
double transform_residual_series(const DiagonalKernelSeries& series,
                                 const BallAutomorphism& F, const CVec& z, const CVec& w);

void write_series(std::ostream& os, const DiagonalKernelSeries& series);
DiagonalKernelSeries read_series(std::istream& is, const DomainSpec& spec);

}  // namespace szegolab
