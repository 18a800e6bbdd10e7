#include "szegolab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace szegolab {

namespace {

// One Bulirsch-Stoer rational-extrapolation tableau over the full sample set;
// returns (limit, error estimate from the last tableau column step).
std::pair<double, double> rational_tableau(const std::vector<double>& ds,
                                           const std::vector<double>& vs) {
    const int n = static_cast<int>(ds.size());
    std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) T[i][0] = vs[i];
    for (int k = 1; k < n; ++k) {
        for (int i = 0; i + k < n; ++i) {
            const double num = T[i + 1][k - 1] - T[i][k - 1];
            const double dr = ds[i] / ds[i + k];
            double den;
            if (k > 1) {
                den = dr * (1.0 - num / (T[i + 1][k - 1] - T[i + 1][k - 2] + 1e-300)) - 1.0;
            } else {
                den = dr - 1.0;
            }
            T[i][k] = T[i + 1][k - 1] + num / den;
        }
    }
    return {T[0][n - 1], std::abs(T[0][n - 1] - T[0][n - 2])};
}

void check_samples(const std::vector<double>& deltas, const std::vector<double>& values) {
    if (deltas.size() != values.size()) throw Error("invalid-argument", "sample size mismatch");
    if (deltas.size() < 3) throw Error("invalid-argument", "limit estimate needs >= 3 samples");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0)) throw Error("invalid-argument", "deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw Error("invalid-argument", "deltas must decrease strictly");
    }
}

bool noise_flag(const LimitFit& fit, const std::vector<double>& values) {
    const double swing = std::abs(values.back() - values.front());
    return fit.error_estimate > 0.1 * std::max(swing, 1e-300 * std::abs(fit.L_hat));
}

}  // namespace

LimitFit limit_estimate(const std::vector<double>& deltas, const std::vector<double>& values) {
    check_samples(deltas, values);
    LimitFit best;
    bool have = false;
    for (std::size_t m = 3; m <= deltas.size(); ++m) {
        std::vector<double> ds(deltas.begin(), deltas.begin() + m);
        std::vector<double> vs(values.begin(), values.begin() + m);
        auto [v, e] = rational_tableau(ds, vs);
        if (!std::isfinite(v)) continue;
        if (!have || e < best.error_estimate) {
            best.L_hat = v;
            best.error_estimate = e;
            have = true;
        }
    }
    if (!have) throw Error("nonmonotone-noise", "rational extrapolation diverged");
    best.noise_warning = noise_flag(best, values);
    return best;
}

LimitFit limit_estimate_linear(const std::vector<double>& deltas,
                               const std::vector<double>& values) {
    check_samples(deltas, values);
    const std::size_t k = std::min<std::size_t>(5, deltas.size());
    const std::size_t off = deltas.size() - k;
    Eigen::MatrixXd A(k, 2);
    Eigen::VectorXd b(k);
    for (std::size_t i = 0; i < k; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = deltas[off + i];
        b(i) = values[off + i];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    LimitFit fit;
    fit.L_hat = c(0);
    fit.error_estimate = (A * c - b).norm();
    fit.noise_warning = noise_flag(fit, values);
    return fit;
}

std::vector<CVec> normal_ray_samples(const DomainSpec& spec, const CVec& p0,
                                     const std::vector<double>& deltas) {
    const auto jet = evaluate_jet(spec, p0);
    if (std::abs(jet.value) > 1e-10)
        throw Error("invalid-argument", "p0 is not a boundary point");
    const CVec nu = jet.grad_zbar / jet.grad_zbar.norm();
    std::vector<CVec> out;
    out.reserve(deltas.size());
    for (double d : deltas) {
        CVec z = p0 - d * nu;
        BoundaryFrame frame;
        try {
            frame = nearest_boundary_point(spec, z);
        } catch (const Error&) {
            throw Error("guard-violation",
                        "normal ray leaves the tubular neighbourhood at delta = " +
                            std::to_string(d) + "; " + std::to_string(out.size()) +
                            " admissible samples");
        }
        if ((frame.p - p0).norm() > 1e-8)
            throw Error("guard-violation",
                        "normal ray projection drifts off p0 at delta = " + std::to_string(d));
        out.push_back(std::move(z));
    }
    return out;
}

std::vector<double> admissible_deltas(const KernelEvaluator& ev, const DomainSpec& spec,
                                      const CVec& p0, const std::vector<double>& deltas) {
    const auto jet = evaluate_jet(spec, p0);
    const CVec nu = jet.grad_zbar / jet.grad_zbar.norm();
    std::vector<double> out;
    for (double d : deltas) {
        const CVec z = p0 - d * nu;
        const double S = ev.partial(z, z, {}, {}).real();
        if (!(S > 0) || evaluator_tail_bound(ev, z) > ev.tail_rel_guard * S) break;
        out.push_back(d);
    }
    return out;
}

namespace {

struct RayData {
    std::vector<CVec> z;
    CVec nu;
    double grad_norm = 0.0;
};

RayData build_ray(const DomainSpec& spec, const CVec& p0, const std::vector<double>& deltas) {
    RayData ray;
    ray.z = normal_ray_samples(spec, p0, deltas);
    const auto jet = evaluate_jet(spec, p0);
    ray.grad_norm = jet.grad_zbar.norm();
    ray.nu = jet.grad_zbar / ray.grad_norm;
    return ray;
}

LimitExperimentReport make_report(std::string name, const CVec& p0, const CVec& X,
                                  const std::vector<double>& deltas,
                                  const std::vector<double>& values,
                                  const std::vector<double>& tails, double target,
                                  std::string provenance) {
    LimitExperimentReport rep;
    rep.experiment = std::move(name);
    rep.p0 = p0;
    rep.X = X;
    rep.samples.reserve(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i)
        rep.samples.push_back({deltas[i], values[i], tails[i]});
    const LimitFit fit = limit_estimate(deltas, values);
    rep.L_hat = fit.L_hat;
    rep.L_star = target;
    rep.rel_err = std::abs(fit.L_hat - target) / std::max(std::abs(target), 1e-300);
    rep.noise_warning = fit.noise_warning;
    rep.provenance = std::move(provenance);
    return rep;
}

}  // namespace

std::vector<LimitExperimentReport> run_theorem1_suite(const DomainSpec& spec,
                                                      const KernelEvaluator& ev,
                                                      const CVec& p0, const CVec& X,
                                                      const std::vector<double>& deltas) {
    const int n = ev.n;
    const RayData ray = build_ray(spec, p0, deltas);

    // Components of X at the anchor; the Levi form is taken for the
    // unit-gradient normalization of the defining function.
    BoundaryFrame anchor;
    anchor.p = p0;
    anchor.nu = ray.nu;
    anchor.z = p0;
    const auto [XH, XN] = split_tangential_normal(anchor, X);
    const double levi_H = levi_form(evaluate_jet(spec, p0), XH) / ray.grad_norm;

    const std::size_t m = deltas.size();
    std::vector<double> va(m), vb(m), vc(m), vd(m), ve(m), vf(m), tails(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto jet = log_kernel_jet(ev, ray.z[i]);
        const auto tensor = metric_tensor(jet);
        const double d = deltas[i];
        va[i] = std::pow(d, n + 1) * tensor.g;
        vb[i] = d * metric_length(tensor, XN);
        vc[i] = std::sqrt(d) * metric_length(tensor, XH);
        vd[i] = beta_invariant(tensor, n);
        ve[i] = sectional_curvature(jet, X);
        vf[i] = ricci_curvature(ev, ray.z[i], X);
        tails[i] = jet.tail_bound;
    }

    const double beta_ball =
        std::pow(static_cast<double>(n), n) *
        std::pow(ev.c_n * std::pow(kPi, n) / std::tgamma(n), (n + 1.0) / n);
    const std::string prov = "rational-extrapolation";
    std::vector<LimitExperimentReport> out;
    out.push_back(make_report("a:detG", p0, X, deltas, va, tails,
                              std::pow(static_cast<double>(n), n) / std::pow(2.0, n + 1), prov));
    out.push_back(make_report("b:tau-normal", p0, X, deltas, vb, tails,
                              0.5 * std::sqrt(static_cast<double>(n)) * XN.norm(), prov));
    out.push_back(
        make_report("c:tau-tangent", p0, X, deltas, vc, tails, std::sqrt(0.5 * n * levi_H), prov));
    out.push_back(make_report("d:beta", p0, X, deltas, vd, tails, beta_ball, prov));
    out.push_back(make_report("e:sectional", p0, X, deltas, ve, tails, -2.0 / n, prov));
    out.push_back(make_report("f:ricci", p0, X, deltas, vf, tails, -(n + 1.0) / n, prov));
    return out;
}

std::vector<LimitExperimentReport> run_localization_suite(
    const DomainSpec& spec, const KernelEvaluator& ev, const KernelEvaluator& ev0,
    const CVec& p0, const CVec& X, const std::vector<double>& deltas) {
    const int n = ev.n;
    const RayData ray = build_ray(spec, p0, deltas);

    const std::size_t m = deltas.size();
    std::vector<double> ra(m), rb(m), rc(m), rd(m), re(m), tails(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto r = curvature_report(ev, ray.z[i], X);
        const auto r0 = curvature_report(ev0, ray.z[i], X);
        ra[i] = r0.g / r.g;
        rb[i] = r0.beta / r.beta;
        rc[i] = r0.tau / r.tau;
        rd[i] = (2.0 / n - r0.R) / (2.0 / n - r.R);
        re[i] = ((n + 1.0) / n - r0.Ric) / ((n + 1.0) / n - r.Ric);
        tails[i] = std::max(r.tail_bound, r0.tail_bound);
    }

    const std::string prov = "ratio-of-germs";
    std::vector<LimitExperimentReport> out;
    out.push_back(make_report("loc:detG", p0, X, deltas, ra, tails, 1.0, prov));
    out.push_back(make_report("loc:beta", p0, X, deltas, rb, tails, 1.0, prov));
    out.push_back(make_report("loc:tau", p0, X, deltas, rc, tails, 1.0, prov));
    out.push_back(make_report("loc:sectional", p0, X, deltas, rd, tails, 1.0, prov));
    out.push_back(make_report("loc:ricci", p0, X, deltas, re, tails, 1.0, prov));
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json cvec_json(const CVec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back({v(i).real(), v(i).imag()});
    return arr;
}

CVec cvec_from_json(const nlohmann::json& arr) {
    CVec v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        v(i) = cplx(arr[i][0].get<double>(), arr[i][1].get<double>());
    return v;
}

}  // namespace

void emit_report_csv(std::ostream& os, const std::vector<LimitExperimentReport>& reports) {
    os << "experiment,delta,value,tail_bound,L_hat,L_star,rel_err,provenance\n";
    for (const auto& rep : reports)
        for (const auto& s : rep.samples)
            os << rep.experiment << ',' << fmt17(s.delta) << ',' << fmt17(s.value) << ','
               << fmt17(s.tail_bound) << ',' << fmt17(rep.L_hat) << ',' << fmt17(rep.L_star)
               << ',' << fmt17(rep.rel_err) << ',' << rep.provenance << '\n';
}

void emit_report_json(std::ostream& os, const std::vector<LimitExperimentReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& rep : reports) {
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& s : rep.samples)
            samples.push_back({{"delta", s.delta},
                               {"value", s.value},
                               {"tail_bound", s.tail_bound}});
        out.push_back({{"experiment", rep.experiment},
                       {"p0", cvec_json(rep.p0)},
                       {"X", cvec_json(rep.X)},
                       {"samples", samples},
                       {"L_hat", rep.L_hat},
                       {"L_star", rep.L_star},
                       {"rel_err", rep.rel_err},
                       {"provenance", rep.provenance},
                       {"noise_warning", rep.noise_warning}});
    }
    os << out.dump(2) << '\n';
}

std::vector<LimitExperimentReport> parse_report_json(std::istream& is) {
    nlohmann::json in;
    is >> in;
    std::vector<LimitExperimentReport> out;
    for (const auto& j : in) {
        LimitExperimentReport rep;
        rep.experiment = j.at("experiment").get<std::string>();
        rep.p0 = cvec_from_json(j.at("p0"));
        rep.X = cvec_from_json(j.at("X"));
        for (const auto& s : j.at("samples"))
            rep.samples.push_back({s.at("delta").get<double>(), s.at("value").get<double>(),
                                   s.at("tail_bound").get<double>()});
        rep.L_hat = j.at("L_hat").get<double>();
        rep.L_star = j.at("L_star").get<double>();
        rep.rel_err = j.at("rel_err").get<double>();
        rep.provenance = j.at("provenance").get<std::string>();
        rep.noise_warning = j.at("noise_warning").get<bool>();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace szegolab
