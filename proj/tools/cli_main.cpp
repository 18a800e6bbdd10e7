#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "szegolab/asymptotics.hpp"
#include "szegolab/io.hpp"

using namespace szegolab;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

struct RunConfig {
    std::string domain = "ball";
    double epsilon = 0.05;
    int degree = 40;
    double c_n = 1.0;
    std::vector<double> deltas;
    std::string out_dir;
    double tol_limits = 0.001;
    double tol_localize = 0.02;
    double tol_scale = 0.01;
    std::string z_text, w_text, x_text;
    std::string config_path;
};

unsigned thread_cap() {
    if (const char* env = std::getenv("SZEGO_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // hardware concurrency
}

// --z style literal: comma-separated components, each "a", "bi" or "a+bi".
CVec parse_point(const std::string& text) {
    std::string semi = text;
    std::replace(semi.begin(), semi.end(), ',', ';');
    return parse_cvec(semi);
}

void apply_config_file(RunConfig& cfg) {
    if (cfg.config_path.empty()) return;
    std::ifstream is(cfg.config_path);
    if (!is) throw Error("io-failure", "cannot open config " + cfg.config_path);
    for (const auto& [key, val] : parse_key_value(is)) {
        if (key == "domain")
            cfg.domain = val;
        else if (key == "epsilon")
            cfg.epsilon = std::stod(val);
        else if (key == "degree")
            cfg.degree = std::stoi(val);
        else if (key == "cn")
            cfg.c_n = std::stod(val);
        else if (key == "deltas") {
            cfg.deltas.clear();
            std::stringstream ss(val);
            std::string piece;
            while (std::getline(ss, piece, ',')) cfg.deltas.push_back(std::stod(piece));
        } else if (key == "out")
            cfg.out_dir = val;
        else if (key == "tol-limits")
            cfg.tol_limits = std::stod(val);
        else if (key == "tol-localize")
            cfg.tol_localize = std::stod(val);
        else if (key == "tol-scale")
            cfg.tol_scale = std::stod(val);
        else
            throw Error("parse-failure", "unknown config key '" + key + "'");
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.degree < 4) throw Error("invalid-argument", "degree must be >= 4");
    if (!(cfg.c_n > 0)) throw Error("invalid-argument", "cn must be positive");
    for (std::size_t i = 1; i < cfg.deltas.size(); ++i)
        if (!(cfg.deltas[i] < cfg.deltas[i - 1]))
            throw Error("invalid-argument", "deltas must decrease strictly");
}

DomainSpec cfg_domain(const RunConfig& cfg) {
    return domain_from_name(cfg.domain, cfg.epsilon);
}

// Exact closed forms for the ball, truncated series otherwise.
std::pair<KernelEvaluator, KernelEvaluator> cfg_evaluators(const RunConfig& cfg) {
    const auto spec = cfg_domain(cfg);
    if (spec.kind() == DomainKind::UnitBall)
        return {exact_ball_evaluator(KernelKind::Szego, spec.n(), cfg.c_n),
                exact_ball_evaluator(KernelKind::Bergman, spec.n(), cfg.c_n)};
    auto [szego, bergman] = build_series_pair(spec, cfg.degree, cfg.c_n, 32, thread_cap());
    auto evS = series_evaluator(std::move(szego));
    auto evK = series_evaluator(std::move(bergman));
    evS.tail_rel_guard = evK.tail_rel_guard = 1e-4;
    return {std::move(evS), std::move(evK)};
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::filesystem::create_directories(dir);
    std::ofstream os(dir / name);
    if (!os) throw Error("io-failure", "cannot write " + (dir / name).string());
    return os;
}

CVec boundary_anchor(const DomainSpec& spec) {
    CVec p0 = CVec::Zero(spec.n());
    p0(0) = 1.0;
    if (spec.kind() == DomainKind::Siegel) {
        p0.setZero();  // model boundary point at the origin
    }
    return p0;
}

std::vector<double> default_deltas(const RunConfig& cfg) {
    if (!cfg.deltas.empty()) return cfg.deltas;
    if (cfg.domain == "ball") {
        std::vector<double> ds;
        for (int k = 0; k <= 7; ++k) ds.push_back(0.2 * std::pow(2.0, -k));
        return ds;
    }
    return {0.38, 0.35, 0.32, 0.29, 0.26, 0.235, 0.21, 0.19, 0.18};
}

int cmd_kernel(const RunConfig& cfg) {
    const auto spec = cfg_domain(cfg);
    const CVec z = parse_point(cfg.z_text);
    const CVec w = parse_point(cfg.w_text.empty() ? cfg.z_text : cfg.w_text);
    if (z.size() != spec.n() || w.size() != spec.n())
        throw Error("invalid-argument", "point dimension mismatch");
    auto [evS, evK] = cfg_evaluators(cfg);
    const cplx S = evS.partial(z, w, {}, {});
    const cplx K = evK.partial(z, w, {}, {});
    const double rho = std::max(z.norm(), w.norm());
    const double tS = evS.tail ? evS.tail(rho) : 0.0;
    const double tK = evK.tail ? evK.tail(rho) : 0.0;
    std::printf("S = %.8g%+.8gi  (tail bound %.3g)\n", S.real(), S.imag(), tS);
    std::printf("K = %.8g%+.8gi  (tail bound %.3g)\n", K.real(), K.imag(), tK);
    return 0;
}

int cmd_metric(const RunConfig& cfg) {
    const auto spec = cfg_domain(cfg);
    const CVec z = parse_point(cfg.z_text);
    const CVec X = parse_point(cfg.x_text);
    if (z.size() != spec.n() || X.size() != spec.n())
        throw Error("invalid-argument", "point dimension mismatch");
    auto [evS, evK] = cfg_evaluators(cfg);
    const auto row = curvature_report(evS, z, X);
    std::printf("tau = %.8g  g = %.8g  beta = %.8g  R = %.8g  Ric = %.8g  tail = %.3g\n",
                row.tau, row.g, row.beta, row.R, row.Ric, row.tail_bound);
    auto os = open_out(cfg, "metric.csv");
    write_curvature_csv(os, {row});
    return 0;
}

int finish_reports(const RunConfig& cfg, const std::vector<LimitExperimentReport>& reports,
                   const std::string& stem, double tol) {
    auto csv = open_out(cfg, stem + ".csv");
    emit_report_csv(csv, reports);
    auto js = open_out(cfg, stem + ".json");
    emit_report_json(js, reports);
    bool ok = true;
    for (const auto& r : reports) {
        std::printf("%-14s L_hat = %.8g  target = %.8g  rel_err = %.3g%s\n",
                    r.experiment.c_str(), r.L_hat, r.L_star, r.rel_err,
                    r.noise_warning ? "  [noise warning]" : "");
        ok = ok && r.rel_err < tol;
    }
    return ok ? 0 : kExitGuard;
}

int cmd_limits(const RunConfig& cfg) {
    const auto spec = cfg_domain(cfg);
    auto [evS, evK] = cfg_evaluators(cfg);
    const CVec p0 = boundary_anchor(spec);
    CVec X(spec.n());
    X.setConstant(cplx(1.0, 0.0) / std::sqrt(static_cast<double>(spec.n())));
    const auto deltas = admissible_deltas(evS, spec, p0, default_deltas(cfg));
    if (deltas.size() < 3) throw Error("guard-violation", "fewer than 3 admissible deltas");
    const auto reports = run_theorem1_suite(spec, evS, p0, X, deltas);
    return finish_reports(cfg, reports, "limits", cfg.tol_limits);
}

int cmd_localize(const RunConfig& cfg) {
    const auto bumped = DomainSpec::bumped_ball(cfg.epsilon);
    const auto ball = DomainSpec::unit_ball(bumped.n());
    const unsigned threads = thread_cap();
    auto ev0 = series_evaluator(
        build_series(bumped, KernelKind::Szego, cfg.degree, cfg.c_n, 32, threads));
    auto ev = series_evaluator(
        build_series(ball, KernelKind::Szego, cfg.degree, cfg.c_n, 32, threads));
    ev0.tail_rel_guard = ev.tail_rel_guard = 1e-4;
    const CVec p0 = boundary_anchor(bumped);
    CVec X(bumped.n());
    X.setConstant(cplx(1.0, 0.0) / std::sqrt(static_cast<double>(bumped.n())));
    RunConfig dcfg = cfg;
    dcfg.domain = "bumped-ball";
    auto deltas = admissible_deltas(ev0, bumped, p0, default_deltas(dcfg));
    deltas = admissible_deltas(ev, bumped, p0, deltas);
    if (deltas.size() < 3) throw Error("guard-violation", "fewer than 3 admissible deltas");
    const auto reports = run_localization_suite(bumped, ev, ev0, p0, X, deltas);
    return finish_reports(cfg, reports, "localize", cfg.tol_localize);
}

int cmd_scale(const RunConfig& cfg) {
    const auto spec = cfg_domain(cfg);
    // anchor on the last axis: the rigid chart there is trivial, so the
    // reported |Q-I| isolates the normalization maps
    CVec p0 = CVec::Zero(spec.n());
    if (spec.kind() != DomainKind::Siegel) p0 = reinhardt_boundary_point(spec, kPi / 2);
    std::vector<double> deltas = cfg.deltas;
    if (deltas.empty())
        for (int j = 2; j <= 10; ++j) deltas.push_back(std::pow(2.0, -j));
    const auto reports = run_scaling_suite(spec, p0, deltas);
    auto os = open_out(cfg, "scaling.csv");
    write_scaling_csv(os, reports);
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::printf("j = %-3d delta = %.8g  eta = %.8g  residual = %.8g  |Q-I| = %.8g\n", r.j,
                    r.delta, r.eta, r.residual, r.q_deviation);
        if (i) ok = ok && r.residual < reports[i - 1].residual + 1e-15;
    }
    return ok ? 0 : kExitGuard;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for a boundary-adapted Kähler metric built from the "
                 "Szegő kernel on strictly pseudoconvex domains"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain, "ball | bumped-ball | siegel");
        sub->add_option("--epsilon", cfg.epsilon, "bumped-ball bump size");
        sub->add_option("--degree", cfg.degree, "series truncation degree");
        sub->add_option("--cn", cfg.c_n, "boundary-measure normalization constant");
        sub->add_option("--deltas", cfg.deltas, "decreasing boundary distances")
            ->delimiter(',');
        sub->add_option("--out", cfg.out_dir, "output directory for CSV/JSON");
        sub->add_option("--tol-limits", cfg.tol_limits, "limit suite tolerance");
        sub->add_option("--tol-localize", cfg.tol_localize, "localization tolerance");
        sub->add_option("--tol-scale", cfg.tol_scale, "scaling tolerance");
        sub->add_option("--config", cfg.config_path, "key-value config file");
    };

    auto* kernel = app.add_subcommand("kernel", "print kernel values at (z, w)");
    add_common(kernel);
    kernel->add_option("--z", cfg.z_text, "point, comma-separated components")->required();
    kernel->add_option("--w", cfg.w_text, "second point (defaults to z)");

    auto* metric = app.add_subcommand("metric", "print tau, g, beta, R, Ric at (z, X)");
    add_common(metric);
    metric->add_option("--z", cfg.z_text, "point")->required();
    metric->add_option("--X", cfg.x_text, "direction")->required();

    auto* limits = app.add_subcommand("limits", "boundary-limit suite");
    add_common(limits);
    auto* localize = app.add_subcommand("localize", "two-domain localization suite");
    add_common(localize);
    auto* scale = app.add_subcommand("scale", "scaling-map ladder");
    add_common(scale);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        apply_config_file(cfg);
        validate(cfg);
        if (kernel->parsed()) return cmd_kernel(cfg);
        if (metric->parsed()) return cmd_metric(cfg);
        if (limits->parsed()) return cmd_limits(cfg);
        if (localize->parsed()) return cmd_localize(cfg);
        if (scale->parsed()) return cmd_scale(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        const std::string code = e.code();
        return code == "invalid-argument" || code == "parse-failure" || code == "io-failure"
                   ? kExitUsage
                   : kExitGuard;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGuard;
    }
    return kExitUsage;
}
