#pragma once

#include <iosfwd>
#include <string>

#include "szegolab/metric.hpp"

namespace szegolab {

struct LimitSample {
    double delta = 0.0;
    double value = 0.0;
    double tail_bound = 0.0;
};

struct LimitFit {
    double L_hat = 0.0;
    double error_estimate = 0.0;
    bool noise_warning = false;
};

/// Extrapolate samples (delta_k, value_k) to delta = 0 by Bulirsch-Stoer
/// rational extrapolation; the prefix depth >= 3 with the smallest internal
/// error estimate wins. Exact on data linear in delta.
LimitFit limit_estimate(const std::vector<double>& deltas, const std::vector<double>& values);

/// First-order least-squares fit value = L + a*delta over the last
/// (up to 5, at least 3) samples.
LimitFit limit_estimate_linear(const std::vector<double>& deltas,
                               const std::vector<double>& values);

struct LimitExperimentReport {
    std::string experiment;
    CVec p0;
    CVec X;
    std::vector<LimitSample> samples;
    double L_hat = 0.0;
    double L_star = 0.0;
    double rel_err = 0.0;
    std::string provenance;
    bool noise_warning = false;
};

/// Interior points p0 - delta_k * nu; verifies each projects back to p0.
std::vector<CVec> normal_ray_samples(const DomainSpec& spec, const CVec& p0,
                                     const std::vector<double>& deltas);

/// Largest prefix of the schedule passing the evaluator's tail guard along
/// the normal ray.
std::vector<double> admissible_deltas(const KernelEvaluator& ev, const DomainSpec& spec,
                                      const CVec& p0, const std::vector<double>& deltas);

/// Six boundary-limit experiments along the inward normal ray at p0:
/// (a) delta^{n+1} g -> n^n/2^{n+1}, (b) delta tau(X_N) -> (sqrt(n)/2)|X_N|,
/// (c) sqrt(delta) tau(X_H) -> sqrt((n/2) Levi(p0, X_H)) with unit-gradient
/// normalization, (d) beta -> its ball constant, (e) R -> -2/n,
/// (f) Ric -> -(n+1)/n (closed-form ball oracle).
std::vector<LimitExperimentReport> run_theorem1_suite(const DomainSpec& spec,
                                                      const KernelEvaluator& ev,
                                                      const CVec& p0, const CVec& X,
                                                      const std::vector<double>& deltas);

/// Five localization ratios between an inner domain (evaluator ev0) and an
/// outer domain (ev) sharing the boundary germ at p0; each extrapolates to 1.
std::vector<LimitExperimentReport> run_localization_suite(
    const DomainSpec& spec, const KernelEvaluator& ev, const KernelEvaluator& ev0,
    const CVec& p0, const CVec& X, const std::vector<double>& deltas);

/// CSV rows: experiment,delta,value,tail_bound,L_hat,L_star,rel_err,provenance.
void emit_report_csv(std::ostream& os, const std::vector<LimitExperimentReport>& reports);
/// JSON summary mirroring the CSV rows plus per-experiment metadata.
void emit_report_json(std::ostream& os, const std::vector<LimitExperimentReport>& reports);
std::vector<LimitExperimentReport> parse_report_json(std::istream& is);

}  // namespace szegolab
