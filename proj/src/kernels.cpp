#include "szegolab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace szegolab {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// a (a-1) ... (a-m+1); zero when m > a.
double falling(int a, int m) {
    double f = 1.0;
    for (int i = 0; i < m; ++i) f *= a - i;
    return f;
}

cplx ipow(cplx z, int k) {
    cplx out = 1.0;
    for (int i = 0; i < k; ++i) out *= z;
    return out;
}

// Mixed partials of u^{-m}, u = 1 - <z,w>: sum over partial matchings
// between the z-index set and the wbar-index set of
// (m)(m+1)...(m+p-1) u^{-m-p} prod(delta) prod(wbar_i) prod(z_j),
// p = #unmatched + #matched.
cplx u_power_partial(cplx u, int m, const CVec& z, const CVec& w,
                     const std::vector<int>& z_idx, const std::vector<int>& wbar_idx) {
    const size_t nz = z_idx.size(), nw = wbar_idx.size();
    cplx total = 0.0;
    std::vector<int> match(nz, -1);  // z-slot -> wbar-slot or -1
    std::vector<bool> used(nw, false);

    auto rising = [&](int p) {
        double f = 1.0;
        for (int i = 0; i < p; ++i) f *= m + i;
        return f;
    };
    auto term = [&]() {
        int pairs = 0;
        cplx prod = 1.0;
        for (size_t i = 0; i < nz; ++i) {
            if (match[i] < 0) {
                prod *= std::conj(w(z_idx[i]));
            } else {
                if (z_idx[i] != wbar_idx[match[i]]) return;  // delta vanishes
                ++pairs;
            }
        }
        for (size_t j = 0; j < nw; ++j)
            if (!used[j]) prod *= z(wbar_idx[j]);
        const int p = static_cast<int>(nz + nw) - pairs;
        total += rising(p) * ipow(1.0 / u, p) * prod;
    };
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == nz) {
            term();
            return;
        }
        match[i] = -1;
        self(self, i + 1);
        for (size_t j = 0; j < nw; ++j) {
            if (used[j]) continue;
            used[j] = true;
            match[i] = static_cast<int>(j);
            self(self, i + 1);
            used[j] = false;
        }
        match[i] = -1;
    };
    rec(rec, 0);
    return ipow(1.0 / u, m) * total;
}

}  // namespace

double DiagonalKernelSeries::coefficient(int a1, int a2) const {
    const NormRow& row = table.at(a1, a2);
    return 1.0 / (kind == KernelKind::Szego ? row.hardy : row.bergman);
}

DiagonalKernelSeries build_series(const DomainSpec& spec, KernelKind kind, int degree,
                                  double c_n, int resolution, unsigned threads) {
    DiagonalKernelSeries series;
    series.kind = kind;
    series.spec = spec;
    series.degree = degree;
    series.c_n = c_n;
    series.table = build_norm_table(spec, degree, c_n, resolution, threads);
    return series;
}

std::pair<DiagonalKernelSeries, DiagonalKernelSeries> build_series_pair(
    const DomainSpec& spec, int degree, double c_n, int resolution, unsigned threads) {
    DiagonalKernelSeries szego = build_series(spec, KernelKind::Szego, degree, c_n,
                                              resolution, threads);
    DiagonalKernelSeries bergman = szego;
    bergman.kind = KernelKind::Bergman;
    return {std::move(szego), std::move(bergman)};
}

DiagonalKernelSeries series_from_table(const DomainSpec& spec, KernelKind kind,
                                       NormTable table) {
    DiagonalKernelSeries series;
    series.kind = kind;
    series.spec = spec;
    series.degree = table.degree;
    series.c_n = table.c_n;
    series.table = std::move(table);
    return series;
}

cplx eval_kernel(const DiagonalKernelSeries& series, const CVec& z, const CVec& w) {
    const cplx u1 = z(0) * std::conj(w(0)), u2 = z(1) * std::conj(w(1));
    std::vector<cplx> p1(series.degree + 1), p2(series.degree + 1);
    p1[0] = p2[0] = 1.0;
    for (int d = 1; d <= series.degree; ++d) {
        p1[d] = p1[d - 1] * u1;
        p2[d] = p2[d - 1] * u2;
    }
    cplx sum = 0.0;
    for (const NormRow& row : series.table.rows)
        sum += (1.0 / (series.kind == KernelKind::Szego ? row.hardy : row.bergman)) *
               p1[row.a1] * p2[row.a2];
    return sum;
}

cplx eval_kernel_partial(const DiagonalKernelSeries& series, const CVec& z, const CVec& w,
                         const std::vector<int>& z_idx, const std::vector<int>& wbar_idx) {
    int mz[2] = {0, 0}, mw[2] = {0, 0};
    for (int i : z_idx) ++mz[i];
    for (int i : wbar_idx) ++mw[i];

    cplx sum = 0.0;
    for (const NormRow& row : series.table.rows) {
        const int a[2] = {row.a1, row.a2};
        if (a[0] < std::max(mz[0], mw[0]) || a[1] < std::max(mz[1], mw[1])) continue;
        double coef = 1.0 / (series.kind == KernelKind::Szego ? row.hardy : row.bergman);
        cplx term = coef;
        for (int c = 0; c < 2; ++c)
            term *= falling(a[c], mz[c]) * ipow(z(c), a[c] - mz[c]) * falling(a[c], mw[c]) *
                    ipow(std::conj(w(c)), a[c] - mw[c]);
        sum += term;
    }
    return sum;
}

cplx eval_exact_ball(KernelKind kind, int n, double c_n, const CVec& z, const CVec& w) {
    return eval_exact_ball_partial(kind, n, c_n, z, w, {}, {});
}

cplx eval_exact_ball_partial(KernelKind kind, int n, double c_n, const CVec& z,
                             const CVec& w, const std::vector<int>& z_idx,
                             const std::vector<int>& wbar_idx) {
    const cplx u = 1.0 - hdot(z, w);
    if (std::abs(u) < 1e-12)
        throw Error("pole-proximity", "1 - <z,w> is numerically zero");
    const double pn = std::pow(kPi, n);
    const double k0 = kind == KernelKind::Szego ? factorial(n - 1) / (c_n * pn)
                                                : factorial(n) / pn;
    const int m = kind == KernelKind::Szego ? n : n + 1;
    return k0 * u_power_partial(u, m, z, w, z_idx, wbar_idx);
}

double sk_invariant(const DiagonalKernelSeries& szego, const DiagonalKernelSeries& bergman,
                    const CVec& z) {
    const int n = szego.spec.n();
    const double S = eval_kernel(szego, z, z).real();
    const double K = eval_kernel(bergman, z, z).real();
    return std::pow(S, n + 1) / std::pow(K, n);
}

double sk_invariant_exact_ball(int n, double c_n, const CVec& z) {
    const double S = eval_exact_ball(KernelKind::Szego, n, c_n, z, z).real();
    const double K = eval_exact_ball(KernelKind::Bergman, n, c_n, z, z).real();
    return std::pow(S, n + 1) / std::pow(K, n);
}

double truncation_tail_bound(const DiagonalKernelSeries& series, double rho) {
    const int D = series.degree;
    // M_d majorizes the degree-d slice on |z| = |w| = rho (up to rho^{2d}):
    // max of |z1|^{2a1} |z2|^{2a2} on the sphere is rho^{2d} a1^a1 a2^a2 / d^d.
    std::vector<double> M(D + 1, 0.0);
    for (const NormRow& row : series.table.rows) {
        const int d = row.a1 + row.a2;
        const double shape =
            d == 0 ? 1.0
                   : std::pow(static_cast<double>(row.a1) / d, row.a1) *
                         std::pow(static_cast<double>(row.a2) / d, row.a2);
        M[d] += shape / (series.kind == KernelKind::Szego ? row.hardy : row.bergman);
    }
    double q = 0.0;
    for (int d = std::max(0, D - 5); d < D; ++d) q = std::max(q, M[d + 1] / M[d]);
    const double r2 = rho * rho;
    if (q * r2 >= 1.0) return std::numeric_limits<double>::infinity();
    return M[D] * std::pow(r2, D) * q * r2 / (1.0 - q * r2);
}

CVec BallAutomorphism::operator()(const CVec& z) const {
    const double a2 = a.squaredNorm();
    const double s = std::sqrt(1.0 - a2);
    const cplx d = 1.0 - hdot(z, a);
    CVec P = a2 > 0 ? CVec((hdot(z, a) / a2) * a) : CVec(CVec::Zero(a.size()));
    CVec N = a - P - s * (z - P);
    return unitary * (N / d);
}

CMat BallAutomorphism::complex_jacobian(const CVec& z) const {
    const int dim = n();
    const double a2 = a.squaredNorm();
    const double s = std::sqrt(1.0 - a2);
    const cplx d = 1.0 - hdot(z, a);
    CMat P = a2 > 0 ? CMat((a * a.adjoint()) / a2) : CMat(CMat::Zero(dim, dim));
    CMat Q = CMat::Identity(dim, dim) - P;
    CVec Pz = P * z;
    CVec N = a - Pz - s * (z - Pz);
    // d(N/d)/dz = -(P + sQ)/d + N abar^T / d^2
    CMat J = -(P + s * Q) / d + (N * a.conjugate().transpose()) / (d * d);
    return unitary * J;
}

cplx BallAutomorphism::det_jacobian(const CVec& z) const {
    const int dim = n();
    const double s = std::sqrt(1.0 - a.squaredNorm());
    const cplx d = 1.0 - hdot(z, a);
    const cplx sign = dim % 2 == 0 ? 1.0 : -1.0;
    return unitary.determinant() * sign * std::pow(s, dim + 1) / ipow(d, dim + 1);
}

cplx BallAutomorphism::det_jacobian_branch(const CVec& z) const {
    const int dim = n();
    const double s = std::sqrt(1.0 - a.squaredNorm());
    const cplx d = 1.0 - hdot(z, a);
    const cplx sign = dim % 2 == 0 ? 1.0 : -1.0;
    const cplx constant = unitary.determinant() * sign * std::pow(s, dim + 1);
    return std::pow(constant, dim / (dim + 1.0)) / ipow(d, dim);
}

BallAutomorphism BallAutomorphism::inverse() const {
    // (U phi_a)^{-1} = phi_a U^* = U^* phi_{Ua}
    BallAutomorphism inv;
    inv.a = unitary * a;
    inv.unitary = unitary.adjoint();
    return inv;
}

BallAutomorphism make_ball_automorphism(const CVec& a, const CMat& unitary) {
    if (a.norm() >= 1.0) throw Error("unsupported-spec", "automorphism center outside the ball");
    BallAutomorphism F;
    F.a = a;
    F.unitary = unitary;
    return F;
}

BallAutomorphism random_ball_automorphism(int n, std::mt19937& rng, double a_cap) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.05, a_cap);
    CVec dir(n);
    for (int i = 0; i < n; ++i) dir(i) = cplx(gauss(rng), gauss(rng));
    CVec a = unif(rng) * (dir / dir.norm());
    CMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMat> qr(G);
    CMat U = qr.householderQ() * CMat::Identity(n, n);
    return make_ball_automorphism(a, U);
}

double transform_residual_exact(KernelKind kind, double c_n, const BallAutomorphism& F,
                                const CVec& z, const CVec& w) {
    const int n = static_cast<int>(z.size());
    const cplx lhs = eval_exact_ball(kind, n, c_n, z, w);
    const cplx bz = kind == KernelKind::Szego ? F.det_jacobian_branch(z) : F.det_jacobian(z);
    const cplx bw = kind == KernelKind::Szego ? F.det_jacobian_branch(w) : F.det_jacobian(w);
    const cplx rhs = bz * eval_exact_ball(kind, n, c_n, F(z), F(w)) * std::conj(bw);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

double transform_residual_series(const DiagonalKernelSeries& series,
                                 const BallAutomorphism& F, const CVec& z, const CVec& w) {
    const int n = series.spec.n();
    const cplx lhs = eval_kernel(series, z, w);
    const bool szego = series.kind == KernelKind::Szego;
    const cplx bz = szego ? F.det_jacobian_branch(z) : F.det_jacobian(z);
    const cplx bw = szego ? F.det_jacobian_branch(w) : F.det_jacobian(w);
    const cplx rhs =
        bz * eval_exact_ball(series.kind, n, series.c_n, F(z), F(w)) * std::conj(bw);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

void write_series(std::ostream& os, const DiagonalKernelSeries& series) {
    NormTable table = series.table;
    table.kind = series.kind == KernelKind::Szego ? "szego" : "bergman";
    write_norm_table(os, table);
}

DiagonalKernelSeries read_series(std::istream& is, const DomainSpec& spec) {
    NormTable table = read_norm_table(is);
    KernelKind kind;
    if (table.kind == "szego")
        kind = KernelKind::Szego;
    else if (table.kind == "bergman")
        kind = KernelKind::Bergman;
    else
        throw Error("io-failure", "unknown kernel kind in series header");
    return series_from_table(spec, kind, std::move(table));
}

}  // namespace szegolab
