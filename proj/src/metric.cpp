#include "szegolab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace szegolab {

namespace {

struct Slot {
    bool bar = false;
    int idx = 0;
};

// Moment A_I = (d_I S) / S over a multiset of slots.
cplx moment(const KernelEvaluator& ev, const CVec& z, double S,
            const std::vector<Slot>& slots) {
    std::vector<int> z_idx, wbar_idx;
    for (const Slot& s : slots) (s.bar ? wbar_idx : z_idx).push_back(s.idx);
    return ev.partial(z, z, z_idx, wbar_idx) / S;
}

// Joint cumulant of log S for up to four slots: sum over set partitions of
// (-1)^{k-1} (k-1)! prod_blocks A_block.
cplx cumulant(const KernelEvaluator& ev, const CVec& z, double S,
              const std::vector<Slot>& slots) {
    const size_t m = slots.size();
    std::vector<int> block(m, 0);
    cplx total = 0.0;
    auto emit = [&](int nblocks) {
        double sign = (nblocks - 1) % 2 == 0 ? 1.0 : -1.0;
        double fact = 1.0;
        for (int i = 2; i < nblocks; ++i) fact *= i;
        cplx prod = sign * fact;
        for (int b = 0; b < nblocks; ++b) {
            std::vector<Slot> sub;
            for (size_t i = 0; i < m; ++i)
                if (block[i] == b) sub.push_back(slots[i]);
            prod *= moment(ev, z, S, sub);
        }
        total += prod;
    };
    auto rec = [&](auto&& self, size_t i, int nblocks) -> void {
        if (i == m) {
            emit(nblocks);
            return;
        }
        for (int b = 0; b <= nblocks; ++b) {
            block[i] = b;
            self(self, i + 1, std::max(nblocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return total;
}

}  // namespace

KernelEvaluator exact_ball_evaluator(KernelKind kind, int n, double c_n) {
    KernelEvaluator ev;
    ev.n = n;
    ev.c_n = c_n;
    ev.partial = [kind, n, c_n](const CVec& z, const CVec& w, const std::vector<int>& zi,
                                const std::vector<int>& wi) {
        return eval_exact_ball_partial(kind, n, c_n, z, w, zi, wi);
    };
    return ev;
}

KernelEvaluator series_evaluator(DiagonalKernelSeries series) {
    KernelEvaluator ev;
    ev.n = series.spec.n();
    ev.c_n = series.c_n;
    auto shared = std::make_shared<DiagonalKernelSeries>(std::move(series));
    ev.partial = [shared](const CVec& z, const CVec& w, const std::vector<int>& zi,
                          const std::vector<int>& wi) {
        return eval_kernel_partial(*shared, z, w, zi, wi);
    };
    ev.tail = [shared](double rho) { return truncation_tail_bound(*shared, rho); };
    return ev;
}

double evaluator_tail_bound(const KernelEvaluator& ev, const CVec& z) {
    return ev.tail ? ev.tail(z.norm()) : 0.0;
}

LogKernelJet log_kernel_jet(const KernelEvaluator& ev, const CVec& z, int order) {
    const int n = ev.n;
    LogKernelJet jet;
    jet.z = z;
    const cplx S0 = ev.partial(z, z, {}, {});
    if (!(S0.real() > 0.0) || std::abs(S0.imag()) > 1e-10 * S0.real())
        throw Error("kernel-nonpositive", "kernel value is not a positive real");
    jet.S = S0.real();
    jet.tail_bound = evaluator_tail_bound(ev, z);
    if (ev.tail && jet.tail_bound > ev.tail_rel_guard * jet.S)
        throw Error("tail-bound-exceeded",
                    "truncation tail exceeds the admissible fraction of the kernel value");

    auto zs = [](int i) { return Slot{false, i}; };
    auto ws = [](int i) { return Slot{true, i}; };

    jet.d10.resize(n);
    jet.d20.resize(n, n);
    jet.d11.resize(n, n);
    for (int i = 0; i < n; ++i) {
        jet.d10(i) = cumulant(ev, z, jet.S, {zs(i)});
        for (int k = 0; k < n; ++k) {
            jet.d20(i, k) = cumulant(ev, z, jet.S, {zs(i), zs(k)});
            jet.d11(i, k) = cumulant(ev, z, jet.S, {zs(i), ws(k)});
        }
    }
    if (order < 2) return jet;
    jet.d21.assign(n, CMat(n, n));
    jet.d22.assign(n * n, CMat(n, n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                jet.d21[j](i, k) = cumulant(ev, z, jet.S, {zs(i), zs(k), ws(j)});
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    jet.d22[j * n + l](i, k) =
                        cumulant(ev, z, jet.S, {zs(i), zs(k), ws(j), ws(l)});
    return jet;
}

MetricTensor metric_tensor(const LogKernelJet& jet) {
    MetricTensor tensor;
    tensor.z = jet.z;
    tensor.S = jet.S;
    tensor.tail_bound = jet.tail_bound;
    tensor.G = 0.5 * (jet.d11 + jet.d11.adjoint());  // enforce exact hermiticity
    Eigen::LLT<CMat> llt(tensor.G);
    if (llt.info() != Eigen::Success)
        throw Error("indefinite-metric", "the (1,1) log-kernel block is not positive definite");
    tensor.Ginv = tensor.G.inverse();
    tensor.g = tensor.G.determinant().real();
    return tensor;
}

double metric_length(const MetricTensor& tensor, const CVec& X) {
    const cplx q = (X.transpose() * tensor.G * X.conjugate()).value();
    return std::sqrt(std::max(0.0, q.real()));
}

double beta_invariant(const MetricTensor& tensor, int n) {
    return tensor.g / std::pow(tensor.S, (n + 1.0) / n);
}

double sectional_curvature(const LogKernelJet& jet, const CVec& X) {
    const int n = jet.n();
    if (X.norm() == 0.0) throw Error("zero-vector", "sectional curvature needs X != 0");
    MetricTensor tensor = metric_tensor(jet);

    cplx t1 = 0.0;
    for (int a = 0; a < n; ++a)
        for (int d = 0; d < n; ++d) {
            cplx inner = 0.0;
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) inner += jet.d22[a * n + d](b, c) * X(b) * X(c);
            t1 += inner * std::conj(X(a)) * std::conj(X(d));
        }

    // V_mu = sum_{b,c} (d g_{b mubar} / dz_c) X_b X_c
    CVec V(n);
    for (int mu = 0; mu < n; ++mu) {
        cplx v = 0.0;
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) v += jet.d21[mu](b, c) * X(b) * X(c);
        V(mu) = v;
    }
    const cplx t2 = (V.transpose() * tensor.Ginv * V.conjugate()).value();

    const cplx q = (X.transpose() * tensor.G * X.conjugate()).value();
    return (-t1 + t2).real() / (q.real() * q.real());
}

namespace {

double log_metric_det(const KernelEvaluator& ev, const CVec& z) {
    return std::log(metric_tensor(log_kernel_jet(ev, z, 1)).g);
}

// Mixed real second partial d^2 f / dx_a dx_b by central differences on the
// 2n real coordinates (a, b real-coordinate indices).
double real_mixed_second(const KernelEvaluator& ev, const CVec& z, int a, int b, double h) {
    const int n = ev.n;
    auto shift = [&](int coord, double t) {
        CVec out = z;
        const int i = coord % n;
        out(i) += coord < n ? cplx(t, 0.0) : cplx(0.0, t);
        return out;
    };
    if (a == b) {
        return (log_metric_det(ev, shift(a, h)) - 2.0 * log_metric_det(ev, z) +
                log_metric_det(ev, shift(a, -h))) /
               (h * h);
    }
    auto shift2 = [&](double ta, double tb) {
        CVec out = shift(a, ta);
        const int i = b % n;
        out(i) += b < n ? cplx(tb, 0.0) : cplx(0.0, tb);
        return out;
    };
    return (log_metric_det(ev, shift2(h, h)) - log_metric_det(ev, shift2(h, -h)) -
            log_metric_det(ev, shift2(-h, h)) + log_metric_det(ev, shift2(-h, -h))) /
           (4.0 * h * h);
}

// Ric_{a bbar} = -d^2 log g / dz_a dzbar_b via the polarization
// 4 d^2/dz dzbar = (d_xx + d_yy) + i (d_xy - d_yx).
CMat ricci_tensor_fd(const KernelEvaluator& ev, const CVec& z, double h) {
    const int n = ev.n;
    CMat ric(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const double xx = real_mixed_second(ev, z, a, b, h);
            const double yy = real_mixed_second(ev, z, n + a, n + b, h);
            const double xy = real_mixed_second(ev, z, a, n + b, h);
            const double yx = real_mixed_second(ev, z, n + a, b, h);
            ric(a, b) = -0.25 * cplx(xx + yy, xy - yx);
            if (b != a) ric(b, a) = std::conj(ric(a, b));
        }
    return ric;
}

}  // namespace

RicciResult ricci_curvature_detail(const KernelEvaluator& ev, const CVec& z, const CVec& X,
                                   double initial_step) {
    if (X.norm() == 0.0) throw Error("zero-vector", "Ricci curvature needs X != 0");
    const MetricTensor tensor = metric_tensor(log_kernel_jet(ev, z));
    const double q = (X.transpose() * tensor.G * X.conjugate()).value().real();

    RicciResult out;
    double h = initial_step;
    while (true) {
        const CMat coarse = ricci_tensor_fd(ev, z, h);
        const CMat fine = ricci_tensor_fd(ev, z, 0.5 * h);
        const CMat richardson = (4.0 * fine - coarse) / 3.0;
        out.tensor = richardson;
        out.step = h;
        out.residual = (fine - coarse).norm() / std::max(1e-300, richardson.norm());
        if (out.residual < 1e-7) break;
        if (0.5 * h < 1e-5) {
            out.precision_warning = true;
            break;
        }
        h *= 0.5;
    }
    out.value = (X.transpose() * out.tensor * X.conjugate()).value().real() / q;
    return out;
}

double ricci_curvature(const KernelEvaluator& ev, const CVec& z, const CVec& X,
                       double initial_step) {
    return ricci_curvature_detail(ev, z, X, initial_step).value;
}

CurvatureReport curvature_report(const KernelEvaluator& ev, const CVec& z, const CVec& X) {
    const LogKernelJet jet = log_kernel_jet(ev, z);
    const MetricTensor tensor = metric_tensor(jet);
    CurvatureReport report;
    report.z = z;
    report.X = X;
    report.tau = metric_length(tensor, X);
    report.g = tensor.g;
    report.beta = beta_invariant(tensor, ev.n);
    report.R = sectional_curvature(jet, X);
    report.Ric = ricci_curvature(ev, z, X);
    report.tail_bound = jet.tail_bound;
    return report;
}

double metric_pullback_residual(const KernelEvaluator& ev, const BallAutomorphism& F,
                                const CVec& z) {
    const CMat G_here = metric_tensor(log_kernel_jet(ev, z)).G;
    const CMat G_there = metric_tensor(log_kernel_jet(ev, F(z))).G;
    const CMat J = F.complex_jacobian(z);
    const CMat pulled = J.transpose() * G_there * J.conjugate();
    return (pulled - G_here).norm() / G_here.norm();
}

}  // namespace szegolab
